"""Module entry point: python -m thabound ..."""

from thabound.cli import main

if __name__ == "__main__":
    raise SystemExit(main())
