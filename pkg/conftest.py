"""Pytest wiring: configure Django the same way resolving/manage.py does."""
import os

import django

os.environ.setdefault("DJANGO_SETTINGS_MODULE", "config.local")
django.setup()
