"""Module entry point: python -m oscquad."""

from .benchcli import main

if __name__ == "__main__":
    main()
