"""Tensor operators and the representation of linear maps on an algebra."""
from .components import (
    ComponentSolveMatrix,
    ExtendedExpansion,
    LinearMapMatrix,
    RepresentationBasis,
    StandardComponents,
    component_solve_matrix,
    describe_basis,
    normalize,
    representation_basis,
    solve_components,
    standard_components,
    standard_components_mul,
    to_matrix,
)
from .operators import (
    DELTA,
    LEFT_FIRST,
    RIGHT_FIRST,
    TensorOperator,
    TensorTerm,
    apply,
    identity_operator,
    left_shift,
    right_shift,
    tensor,
    tensor_mul,
)
from .products import tensor_algebra, tensor_element

__all__ = [
    "ComponentSolveMatrix",
    "DELTA",
    "ExtendedExpansion",
    "LEFT_FIRST",
    "LinearMapMatrix",
    "RIGHT_FIRST",
    "RepresentationBasis",
    "StandardComponents",
    "TensorOperator",
    "TensorTerm",
    "apply",
    "component_solve_matrix",
    "describe_basis",
    "identity_operator",
    "left_shift",
    "normalize",
    "representation_basis",
    "right_shift",
    "solve_components",
    "standard_components",
    "standard_components_mul",
    "tensor",
    "tensor_algebra",
    "tensor_element",
    "tensor_mul",
]
