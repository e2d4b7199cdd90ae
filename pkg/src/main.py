"""
Main entry point for the topological recursion toolkit
Loads settings, configures logging and dispatches to the CLI commands
"""

import logging
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional

from cli import load_config, run_command


class TopoRecApp:
    """
    Process-level orchestrator: one config, one logging setup, one command
    """

    def __init__(self, config_path: Optional[str] = "config.yaml"):
        """
        Initialize the application

        Args:
            config_path: Path to the YAML configuration file
        """
        self.config = self._load_config(config_path)
        self._setup_logging()

        self.logger = logging.getLogger(__name__)
        self.logger.debug(f"Settings: {self.config}")

    def _load_config(self, config_path: Optional[str]) -> Dict[str, Any]:
        """Load configuration from YAML; defaults when the file is missing"""
        return load_config(config_path)

    def _setup_logging(self):
        """Set up logging configuration; stdout is reserved for results"""
        log_level = str(self.config.get('log_level', 'WARNING')).upper()
        log_file = self.config.get('log_file')

        handlers: List[logging.Handler] = [logging.StreamHandler(sys.stderr)]
        if log_file:
            # Create logs directory if it doesn't exist
            Path(log_file).parent.mkdir(parents=True, exist_ok=True)
            handlers.append(logging.FileHandler(log_file))

        logging.basicConfig(
            level=getattr(logging, log_level, logging.WARNING),
            format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
            handlers=handlers,
        )

    def run(self, argv: List[str]) -> int:
        """Run one command and return its exit code"""
        return run_command(argv, self.config)


def _config_path(argv: List[str]) -> str:
    """Value of --config wherever it appears, default config.yaml"""
    for i, arg in enumerate(argv):
        if arg == "--config" and i + 1 < len(argv):
            return argv[i + 1]
        if arg.startswith("--config="):
            return arg.split("=", 1)[1]
    return "config.yaml"


def main(argv: Optional[List[str]] = None) -> int:
    """Main entry point"""
    argv = list(sys.argv[1:] if argv is None else argv)
    app = TopoRecApp(_config_path(argv))
    return app.run(argv)


if __name__ == "__main__":
    try:
        sys.exit(main())
    except KeyboardInterrupt:
        print("\nInterrupted by user", file=sys.stderr)
        sys.exit(130)
