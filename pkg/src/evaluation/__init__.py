from .machine import *
from .fuzz import *
