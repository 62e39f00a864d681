from alexgauss.cli import main

raise SystemExit(main())
