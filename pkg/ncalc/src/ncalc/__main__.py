from ncalc.cli.main import main

raise SystemExit(main())
