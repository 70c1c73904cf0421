"""Main entry point for orbitspace."""

import sys
import logging
from pathlib import Path
from typing import Optional, Sequence

from .cli import build_parser, execute
from .config import Config

logger = logging.getLogger(__name__)


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Main entry point."""
    args = build_parser().parse_args(argv)

    # Load configuration
    config_path = Path(getattr(args, "config", None) or "config.yaml")
    if not hasattr(args, "config") and not config_path.exists():
        # Try the repository root next to the package
        config_path = Path(__file__).parent.parent / "config.yaml"

    config = Config(str(config_path))

    # Logs go to stderr so reports on stdout stay byte-stable
    logging.basicConfig(
        level=getattr(args, "log_level", None) or config.log_level,
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        stream=sys.stderr,
    )
    logger.debug(f"Using configuration {config_path}")

    return execute(args, config)


if __name__ == "__main__":
    sys.exit(main())
