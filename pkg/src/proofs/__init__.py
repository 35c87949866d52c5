from .formulas import *
from .derivation import *
from .translate import *
from .validity import *
from .cuts import *
