"""
Main entry point for the khoma command line
"""
import logging
import sys

from khoma.cli import run
from khoma.config import load_settings


def main() -> int:
    """
    Load .env settings, configure logging and run the CLI
    """
    settings = load_settings()
    logging.basicConfig(
        level=logging.DEBUG if settings.debug_mode else logging.INFO,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    logging.getLogger(__name__).debug("🔧 Debug mode enabled, crossing limit %d", settings.max_crossings)
    return run(sys.argv[1:])


if __name__ == "__main__":
    sys.exit(main())
