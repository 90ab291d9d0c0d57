"""Access to the ``HASSE_MAPS`` settings dictionary with defaults."""

import pathlib
import typing

import django.conf

DEFAULTS: typing.Dict[str, typing.Any] = {
    "MAX_RANK": 8,
    "RANK_CAP": 8,
    "EXTREMAL_CONSTRAINT": True,
    "INCLUDE_IDENTITY": False,
    "WORKERS": 1,
    "EXPECTED_TABLE": pathlib.Path(__file__).resolve().parent
    / "fixtures"
    / "expected_table.json",
}

# Search cost and the E8 bound both stop at rank 8.
HARD_RANK_CAP: int = 8


def get_setting(name: str) -> typing.Any:
    """Return one hasse_maps setting.

    Args:
        name: Key inside ``settings.HASSE_MAPS`` (for example ``"MAX_RANK"``).

    Returns:
        The configured value, or the built-in default when the project does
        not set it. ``RANK_CAP`` is clamped to the hard cap of 8.

    Raises:
        KeyError: If ``name`` is not a known setting.
    """
    if name not in DEFAULTS:
        raise KeyError(f"Unknown hasse_maps setting: {name}")
    user: typing.Dict[str, typing.Any] = getattr(
        django.conf.settings, "HASSE_MAPS", {}
    )
    value = user.get(name, DEFAULTS[name])
    if name == "RANK_CAP":
        return min(int(value), HARD_RANK_CAP)
    return value
