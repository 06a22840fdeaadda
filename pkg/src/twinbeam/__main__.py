"""Allow running the CLI as ``python -m twinbeam``."""

from .cli import main

if __name__ == "__main__":
    main()
