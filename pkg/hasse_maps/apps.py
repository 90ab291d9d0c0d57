"""Django app configuration for the hasse_maps application."""

import django.apps


class HasseMapsConfig(django.apps.AppConfig):
    """Application configuration for the hasse_maps Django app.

    The application carries no models; it is installed so that Django finds
    its management commands (``hasse``, ``map``, ``classify``, ``verify``)
    and its test package.

    Attributes:
        name (str): The full Python path to the application, used by Django
            to identify this app in INSTALLED_APPS.
        verbose_name (str): Human readable application name.
    """

    name: str = "hasse_maps"
    verbose_name: str = "Hasse diagram maps"
