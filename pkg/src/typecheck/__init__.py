from .od import *
from .recursion import *
from .typing import *
