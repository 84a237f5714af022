from . import configs
from . import logging
