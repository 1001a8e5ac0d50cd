"""Allow ``python -m specialsys``."""

from .cli import main

main()
