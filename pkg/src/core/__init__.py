from .errors import *
from .types import *
from .syntax import *
from .subst import *
from .names import *
from .enumerate import *
from .matching import *
