import logging

from friction_pinn import __app_name__
from friction_pinn.config.app_config import FrictionPinnConfig
from friction_pinn.logging.logging import setup_logger


class AppContext:
    """Settings and logger handed to every command."""

    def __init__(self) -> None:
        self.app_config = FrictionPinnConfig(app_name=__app_name__)
        # numpy/scipy runtime warnings go through the same stderr handler
        logging.captureWarnings(True)
        self.logger = setup_logger(
            log_level=self.app_config.log_level,
            app_name=__app_name__,
            bind_to=logging.getLogger("py.warnings"),
        )
