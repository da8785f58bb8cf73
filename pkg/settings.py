import logging
import os
from typing import Optional

from dotenv import load_dotenv

# Load environment variables
load_dotenv()

LOG_FORMAT = '%(asctime)s %(levelname)s %(name)s: %(message)s'


class Settings:
    def __init__(self):
        """Read run-wide defaults from the environment (and a .env file if present)."""
        self.log_level = os.getenv('THERMALRWA_LOG_LEVEL', 'INFO').upper()
        self.output_dir = os.getenv('THERMALRWA_OUTPUT_DIR', 'results')

        raw_modes = os.getenv('THERMALRWA_ORACLE_MODES', '2000')
        try:
            self.oracle_modes = int(raw_modes)
        except ValueError:
            logging.getLogger(__name__).warning(
                "THERMALRWA_ORACLE_MODES=%r is not an integer, using 2000", raw_modes
            )
            self.oracle_modes = 2000

    def default_output(self, model: str) -> str:
        return os.path.join(self.output_dir, f"{model}.csv")

    def config_defaults(self) -> dict:
        """Scenario keys whose default comes from the environment."""
        return {'oracle_modes': self.oracle_modes}


def configure_logging(level: Optional[str] = None, settings: Optional[Settings] = None):
    level = (level or (settings or Settings()).log_level).upper()
    logging.basicConfig(format=LOG_FORMAT)
    logging.getLogger().setLevel(getattr(logging, level, logging.INFO))
