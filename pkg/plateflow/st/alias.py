"""
# Description

This module contains common dictionaries to normalise and correct user inputs.
All values can be found in lowercase, to allow comparison with the `string.lower()` method.


# Index

`export`  
`flags`  


# Examples

```python
fmt = 'Comma separated'
if fmt.lower() in plateflow.st.alias.export['csv']:
    ... do stuff ...
```

---
"""


export: dict = {
    'csv'  : ['csv', 'comma separated', 'comma-separated', 'table', 'tables'],
    'vtk'  : ['vtk', 'legacy vtk', 'paraview', 'structured grid', 'structured_grid'],
    'both' : ['both', 'all', 'csv+vtk', 'vtk+csv'],
}
"""Dict with the available export formats."""


flags: dict = {
    'ok'            : ['ok', 'success', 'converged'],
    'near_singular' : ['near_singular', 'near-singular', 'nearsingular', 'singular', 'resonance'],
}
"""Solver flags written to the sweep tables."""


def normalise(value:str, dictionary:dict) -> str:
    """Returns the key of `dictionary` whose aliases contain `value`.

    Raises a `ValueError` listing the accepted keys if no alias matches.
    """
    text = str(value).strip().lower()
    for key, names in dictionary.items():
        if text in names:
            return key
    raise ValueError(f"Unrecognised option '{value}', expected one of: {list(dictionary.keys())}")
