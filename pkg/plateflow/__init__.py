"""
.. include:: ../README.md
"""


from ._version import __version__ as version
from . import st
from . import plate
