from . import decision
from . import power
from . import radio
from . import scoring
from . import sim
from . import utils
from . import config
from . import errors
