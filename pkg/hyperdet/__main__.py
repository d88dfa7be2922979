from hyperdet.cli import main

raise SystemExit(main())
