import logging
import logging.config
import os

import yaml

logger = logging.getLogger(__name__)

_configured = False


def configure_logging(config_path: str = "config/logging_config.yaml", force: bool = False) -> None:
    """Apply the dictConfig stored at `config_path`.

    Falls back to `logging.basicConfig` when the file is absent or unreadable,
    so library use without the repository config still gets warnings.
    """
    global _configured
    if _configured and not force:
        return
    if os.path.exists(config_path):
        try:
            with open(config_path, "r") as f:
                log_config = yaml.safe_load(f)
            logging.config.dictConfig(log_config)
            _configured = True
            return
        except (yaml.YAMLError, ValueError, TypeError) as e:
            logging.basicConfig(level=logging.INFO)
            logger.warning("Could not apply logging config %s: %s", config_path, e)
            _configured = True
            return
    logging.basicConfig(level=logging.INFO, format="%(levelname)s: %(name)s: %(message)s")
    _configured = True
