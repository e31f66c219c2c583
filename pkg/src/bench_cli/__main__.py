import sys

from src.bench_cli.main import main

sys.exit(main())
