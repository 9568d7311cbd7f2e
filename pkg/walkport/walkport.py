# -*- coding:utf-8 -*-

"""
Application bootstrap: settings and logger.

Date:   2026/10/17
"""

from walkport.utils import tools
from walkport.utils import logger
from walkport.config import config


class Walkport:
    """ Process-wide bootstrap shared by the command line and scripts.
    """

    def __init__(self):
        self.session_id = None

    def initialize(self, config_module=None, log_level=None):
        """ Initialize.

        Args:
            config_module: config file path, normally it's a json file.
            log_level: Override of the configured log level.
        """
        self._load_settings(config_module)
        self._init_logger(log_level)
        logger.debug("threads:", config.threads, caller=self)

    def _load_settings(self, config_module):
        """ Load config settings.

        Args:
            config_module: config file path, normally it's a json file.
        """
        config.loads(config_module)

    def _init_logger(self, log_level=None):
        """Initialize logger."""
        console = config.log.get("console", True)
        level = log_level or config.log.get("level", "WARNING")
        path = config.log.get("path", "/tmp/logs/walkport")
        name = config.log.get("name", "walkport.log")
        clear = config.log.get("clear", False)
        backup_count = config.log.get("backup_count", 0)
        self.session_id = tools.get_uuid1()[:8]
        logger.set_session(self.session_id)
        if console:
            logger.initLogger(level)
        else:
            logger.initLogger(level, path, name, clear, backup_count)


walkport = Walkport()
