"""Configure Django for pytest: the suite is plain Django TestCases."""

import os

import django

os.environ.setdefault("DJANGO_SETTINGS_MODULE", "project.settings")
django.setup()
