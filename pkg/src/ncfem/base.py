from ncfem.utils.config import get_config, load_config
from ncfem.utils.logger import logger as LOGGER


class NcBase():
    """ Base class giving a logger and config lookups to the objects that run studies. """

    def __init__(self, config=None, logger=None, *args, **kwargs):
        """
        Args:
            config (dict, optional): A merged config, see `ncfem.utils.config.load_config`.
                The packaged defaults are loaded if not given.
            logger (logger, optional): The logger, default is the ncfem loguru logger.
        """
        if logger is None:
            logger = LOGGER
        self.logger = logger

        if config is None:
            config = load_config()
        self.config = config

    def get_config(self, key=None, default=None):
        """ Dotted key lookup on this object's config. """
        return get_config(key, default=default, config=self.config)
