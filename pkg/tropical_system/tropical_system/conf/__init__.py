"""Settings package.

Select settings module via DJANGO_SETTINGS_MODULE, e.g.:
- tropical_system.conf.dev
- tropical_system.conf.prod
"""
