# -*- coding:utf-8 -*-

"""
Config module.

Date:   2026/10/17
"""

import os
import json

from walkport import const
from walkport.utils import logger
from walkport.utils import validators
from walkport.utils import exceptions


THREADS_ENV = "WALKPORT_THREADS"


class Config:
    """ Config module will load a json file like `config.json` and parse the content to json object.
        1. Configure content must be key-value pair, and `key` will be set as Config module's attributes;
        2. Invoking Config module's attributes can get those values;
        3. Some `key` names in upper case are built in, and will be set in lower case:
            LOG: Logger config, e.g. {"console": true, "level": "INFO"}.
            THREADS: Worker cap for parallel branch evaluation, default is 1.
                The environment variable `WALKPORT_THREADS` caps it.
            TOLERANCE: {"fidelity": 1e-10, "prune": 1e-14, "compare": 1e-10}.
            SEED: Default seed for sample mode, default is 0.
            SECURITY: {"phases": [...], "view": "ensemble"}.
    """

    def __init__(self):
        self.log = {}
        self.threads = 1
        self.tolerance = {}
        self.seed = 0
        self.security = {}
        self._update({})

    def loads(self, config_file=None):
        """ Load config file.

        Args:
            config_file: config json file.

        Raise:
            ValidationError: The file can not be read or is not a json object.
        """
        configures = {}
        if config_file:
            try:
                with open(config_file) as f:
                    configures = json.loads(f.read())
            except (OSError, ValueError) as e:
                raise exceptions.ValidationError("config file error: {}".format(e))
            if not isinstance(configures, dict):
                raise exceptions.ValidationError("config json file must hold an object")
        self._update(configures)

    @property
    def fidelity_tolerance(self):
        return self.tolerance.get("fidelity", const.FIDELITY_TOLERANCE)

    @property
    def prune_tolerance(self):
        return self.tolerance.get("prune", const.PRUNE_TOLERANCE)

    @property
    def compare_tolerance(self):
        return self.tolerance.get("compare", const.COMPARE_TOLERANCE)

    @property
    def security_phases(self):
        return tuple(self.security.get("phases", const.DEFAULT_PHASES))

    @property
    def security_view(self):
        return self.security.get("view", const.VIEW_ENSEMBLE)

    def _update(self, update_fields):
        """ Update config attributes.

        Args:
            update_fields: Update fields.
        """
        self.log = update_fields.get("LOG", {})
        self.threads = validators.int_field(update_fields.get("THREADS", 1), minimum=1)
        self.tolerance = update_fields.get("TOLERANCE", {})
        self.seed = validators.int_field(update_fields.get("SEED", 0))
        self.security = update_fields.get("SECURITY", {})
        if self.security.get("view") is not None:
            validators.choice_field(self.security["view"], const.VIEWS, name="SECURITY.view")

        env_threads = os.environ.get(THREADS_ENV)
        if env_threads:
            self.threads = min(self.threads, validators.int_field(env_threads, minimum=1, name=THREADS_ENV))
            logger.debug("threads capped by", THREADS_ENV, "=", self.threads, caller=self)

        for k, v in update_fields.items():
            if k.isupper():
                continue
            setattr(self, k, v)


config = Config()
