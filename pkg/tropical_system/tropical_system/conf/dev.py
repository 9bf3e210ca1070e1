from .base import *  # noqa

# Dev overrides
DEBUG = True

# В dev подробный лог библиотеки
LOGGING['loggers']['tropical']['level'] = 'DEBUG'  # noqa: F405
