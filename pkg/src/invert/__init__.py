from .invert import *
