# -*- coding:utf-8 -*-

import sys

from walkport.cli import main

sys.exit(main())
