from .settings import *
from .commands import *
from .main import *
