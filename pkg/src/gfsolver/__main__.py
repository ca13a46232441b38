"""Entry point for running gfsolver as a module."""

import sys


def main() -> None:
    """Main entry point."""
    from gfsolver.cli import main as cli_main

    try:
        sys.exit(cli_main())
    except KeyboardInterrupt:
        sys.exit(130)


if __name__ == "__main__":
    main()
