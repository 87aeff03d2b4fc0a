"""
# Description

Functions to locate, create and remove files,
and to store Python objects as compressed binary snapshots.


# Index

| | |
| --- | --- |
| `get()`      | Check that a file exists, and return the full path |
| `get_dir()`  | Get the full path of a folder, creating it if requested |
| `remove()`   | Remove file or folder |
| `save()`     | Save a Python object to a binary file, as `.plateflow` |
| `load()`     | Load a Python object from a binary `.plateflow` file |

---
"""


import os
import shutil
import pickle
import gzip


EXTENSION = '.plateflow'
"""Extension of the binary snapshots written by `save()`."""


def get(
        filepath,
        return_anyway:bool=False
        ) -> str:
    """Check if `filepath` exists, and returns its full path.

    Raises an error if the file is not found,
    unless `return_anyway = True`, in which case it returns None.
    """
    if filepath is not None and os.path.isfile(filepath):
        return os.path.abspath(filepath)
    if return_anyway:
        return None
    raise FileNotFoundError('Nothing found at ' + str(filepath))


def get_dir(
        folder=None,
        create:bool=False,
    ) -> str:
    """Returns the full path of `folder`.

    If none is provided, the current working directory is returned.
    Missing folders are created with `create = True`,
    otherwise a `FileNotFoundError` is raised.
    """
    if folder is None:
        return os.getcwd()
    if os.path.isdir(folder):
        return os.path.realpath(folder)
    if create:
        os.makedirs(folder, exist_ok=True)
        return os.path.realpath(folder)
    raise FileNotFoundError(f'Missing folder at {folder}')


def remove(filepath:str) -> None:
    """Removes the given file or folder at `filepath`.

    > WARNING: Removing stuff is always dangerous, be careful!
    """
    if filepath is None:
        return None  # It did not exist in the first place
    elif os.path.isfile(filepath):
        os.remove(filepath)
    elif os.path.isdir(filepath):
        shutil.rmtree(filepath)
    return None


def save(object, filepath:str=None, verbose:bool=True) -> str:
    """Save a Python object as a compressed binary `*.plateflow` file.

    The file is written to `filepath`, or to `data.plateflow` in the CWD if none is given.
    Returns the full path of the written file.
    """
    filepath = 'data' if filepath is None else str(filepath)
    if not filepath.endswith(EXTENSION):
        filepath += EXTENSION
    filepath = os.path.abspath(filepath)
    with gzip.open(filepath, 'wb') as f:
        pickle.dump(object, f)
    if verbose:
        print(f"Data saved and compressed to {filepath}")
    return filepath


def load(filepath:str='data' + EXTENSION):
    """Load a Python object from a binary `*.plateflow` file.

    Use only if you trust the person who sent you the file!
    """
    file_path = get(filepath, return_anyway=True)
    if not file_path:
        file_path = get(str(filepath) + EXTENSION, return_anyway=True)
    if not file_path:
        raise FileNotFoundError(f"Missing file {filepath}")
    with gzip.open(file_path, 'rb') as f:
        data = pickle.load(f)
    return data
