"""Django settings for project project.

Generated by 'django-admin startproject' using Django 6.0 and reduced to what
the hasse_maps management commands need: no database, no HTTP stack.

For more information on this file, see
https://docs.djangoproject.com/en/6.0/topics/settings/

For the full list of settings and their values, see
https://docs.djangoproject.com/en/6.0/ref/settings/
"""

import pathlib
import typing

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR: pathlib.Path = pathlib.Path(__file__).resolve().parent.parent


# SECURITY WARNING: keep the secret key used in production secret!
SECRET_KEY: str = (
    "django-insecure-3p$h1v@k0q8#w5r!x2m^d7n&c9z_e4t)b6y(a+u-o=l*j%s0f"
)

DEBUG: bool = False


# Application definition

INSTALLED_APPS: typing.List[str] = [
    "django.contrib.auth",
    "django.contrib.contenttypes",
    "rest_framework",
    "hasse_maps",
]


# Internationalization
# https://docs.djangoproject.com/en/6.0/topics/i18n/

LANGUAGE_CODE: str = "en-us"

TIME_ZONE: str = "UTC"

USE_I18N: bool = False

USE_TZ: bool = True


# Django REST Framework configuration
REST_FRAMEWORK: typing.Dict[str, typing.Any] = {
    "DEFAULT_RENDERER_CLASSES": ["rest_framework.renderers.JSONRenderer"],
    "DEFAULT_PARSER_CLASSES": ["rest_framework.parsers.JSONParser"],
    "UNAUTHENTICATED_USER": None,
}

# hasse_maps configuration
HASSE_MAPS: typing.Dict[str, typing.Any] = {
    "MAX_RANK": 8,
    "RANK_CAP": 8,
    "EXTREMAL_CONSTRAINT": True,
    "INCLUDE_IDENTITY": False,
    "WORKERS": 1,
    "EXPECTED_TABLE": BASE_DIR / "hasse_maps" / "fixtures" / "expected_table.json",
}


# Logging
# https://docs.djangoproject.com/en/6.0/topics/logging/
# Log records go to stderr so command output on stdout stays byte-stable.

LOGGING: typing.Dict[str, typing.Any] = {
    "version": 1,
    "disable_existing_loggers": False,
    "formatters": {
        "plain": {"format": "%(levelname)s %(name)s: %(message)s"},
    },
    "handlers": {
        "stderr": {
            "class": "logging.StreamHandler",
            "stream": "ext://sys.stderr",
            "formatter": "plain",
        },
    },
    "loggers": {
        "hasse_maps": {
            "handlers": ["stderr"],
            "level": "DEBUG" if DEBUG else "WARNING",
            "propagate": False,
        },
    },
}
