"""
# System tools

This module contains System Tools for common tasks across subpackages.


# Index

| | |
| --- | --- |
| `plateflow.st.file`  | File manipulation and binary snapshots |
| `plateflow.st.alias` | Useful dictionaries for user input correction |

"""


from . import file
from . import alias
