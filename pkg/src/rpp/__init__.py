from .model import *
from .codec import *
from .syntax import *
from .compiler import *
from .generate import *
