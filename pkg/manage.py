#!/usr/bin/env python
"""Entry point for the hasse_maps commands and the test runner.

Example:
    $ python manage.py hasse G2 fund:short --format text
    $ python manage.py verify --max-rank 8 --workers 4
    $ python manage.py test hasse_maps --exclude-tag slow
"""
import os
import sys


def main() -> None:
    """Dispatch ``sys.argv`` to a Django management command."""
    os.environ.setdefault("DJANGO_SETTINGS_MODULE", "project.settings")
    try:
        import django.core.management
    except ImportError as exc:
        raise ImportError(
            "Django is not importable; install the project with `pdm install` "
            "and run this script from its virtual environment."
        ) from exc
    django.core.management.execute_from_command_line(sys.argv)


if __name__ == "__main__":
    main()
