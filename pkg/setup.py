from setuptools import setup, find_packages

DESCRIPTION = "PlateFlow solves the linearized stationary problem of a hinged-free rectangular plate in a flow, classifies its steady states by modality along the flow parameter, and lifts them to solutions of the nonlinear problem."

exec(open('plateflow/_version.py').read())

with open('README.md', 'r') as f:
    LONG_DESCRIPTION = f.read()

setup(
    name = 'plateflow',
    version = __version__,
    description = DESCRIPTION,
    long_description = LONG_DESCRIPTION,
    long_description_content_type = 'text/markdown',
    packages = find_packages(exclude=['tests']),
    install_requires = ['numpy', 'pandas', 'scipy', 'matplotlib'],
    extras_require = {
        'dev': ['pytest', 'twine', 'build']
    },
    entry_points = {
        'console_scripts': ['plateflow = plateflow.plate.cli:main'],
    },
    python_requires = '>=3.8',
    license = 'AGPL-3.0',
    keywords = ['Plate', 'Biharmonic', 'Flow-structure interaction', 'Suspension bridge', 'Flutter', 'Galerkin', 'Spectral methods', 'Finite elements', 'Continuation'],
    classifiers = [
        "Development Status :: 4 - Beta",
        "Natural Language :: English",
        "Intended Audience :: Science/Research",
        "Programming Language :: Python :: 3",
        "Topic :: Scientific/Engineering :: Mathematics",
        "Operating System :: POSIX :: Linux",
        "Operating System :: Microsoft :: Windows",
        "Operating System :: Other OS",
    ]
)
