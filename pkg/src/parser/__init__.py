from .grammar import *
from .parser import *
from .pretty import *
from .generate import *
