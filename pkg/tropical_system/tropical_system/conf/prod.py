from .base import *  # noqa

# Prod overrides
DEBUG = False

if SECRET_KEY == 'dev-insecure-placeholder':  # noqa: F405
    raise ImproperlyConfigured('DJANGO_SECRET_KEY must be set in production')  # noqa: F405

# В prod библиотека пишет только предупреждения и ошибки
LOGGING['loggers']['tropical']['level'] = 'WARNING'  # noqa: F405
