# tropical_system/__init__.py
