"""Tests for loading algebras from spec documents."""

import json

import pytest

from ncalc.algebra import builtin, dump_algebra, load_algebra, resolve_algebra
from ncalc.errors import FlagContradiction, MalformedSpec


def _build_split_complex() -> dict:
    # j^2 = +1
    return {
        "name": "split-complex",
        "dim": 2,
        "basis": ["1", "j"],
        "constants": [
            {"k": 0, "l": 0, "p": 0, "v": "1"},
            {"k": 0, "l": 1, "p": 1, "v": "1"},
            {"k": 1, "l": 0, "p": 1, "v": "1"},
            {"k": 1, "l": 1, "p": 0, "v": "1"},
        ],
    }


def test_omitted_flags_are_inferred() -> None:
    algebra = load_algebra(_build_split_complex())
    assert algebra.flags.unital
    assert algebra.flags.associative
    assert not algebra.flags.division


def test_one_dimensional_algebra_is_unital() -> None:
    algebra = load_algebra({"dim": 1, "constants": [{"k": 0, "l": 0, "p": 0, "v": 1}]})
    assert algebra.flags.unital
    assert algebra.basis_labels == ("e0",)


def test_false_division_claim_is_caught() -> None:
    payload = _build_split_complex()
    payload["flags"] = {"division": True}
    with pytest.raises(FlagContradiction):
        load_algebra(payload)


def test_duplicate_entries_are_rejected() -> None:
    payload = _build_split_complex()
    payload["constants"].append({"k": 1, "l": 1, "p": 0, "v": "2"})
    with pytest.raises(MalformedSpec, match="Duplicate"):
        load_algebra(payload)


def test_missing_file_is_malformed(tmp_path) -> None:
    with pytest.raises(MalformedSpec):
        load_algebra(tmp_path / "absent.json")


def test_dump_and_load_preserve_constants(tmp_path) -> None:
    quaternions = builtin("quaternions")
    path = tmp_path / "quaternions.json"
    path.write_text(json.dumps(dump_algebra(quaternions).to_dict()))

    loaded = load_algebra(path)
    assert loaded is not quaternions
    assert loaded.flags == quaternions.flags
    assert (loaded.constants == quaternions.constants).all()
    assert set(loaded.generators) == {"conj"}


def test_resolve_prefers_builtins() -> None:
    assert resolve_algebra("complex") is builtin("complex")
    assert resolve_algebra(_build_split_complex()).name == "split-complex"
