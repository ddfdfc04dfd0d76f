from os.path import dirname, join

from setuptools import find_packages, setup

with open(join(dirname(__file__), 'hermlab', '__version__.py')) as v:
    __version__ = None
    exec(v.read().strip())

with open('README.md') as f:
    long_description = f.read()

with open('requirements.txt') as f:
    requirements = [line.strip() for line in f.readlines()]

with open('requirements-dev.txt') as f:
    requirements_dev = [line.strip() for line in f.readlines()]

setup(
    name="hermlab",
    packages=find_packages(include=['hermlab*']),
    version=__version__,
    description="Curvature, torsion and holonomy of Hermitian Lie algebras"
                " and frame models",
    long_description=long_description,
    long_description_content_type='text/markdown',
    classifiers=[
        'Programming Language :: Python :: 3',
        'Operating System :: OS Independent',
        'Topic :: Scientific/Engineering :: Mathematics',
    ],
    python_requires='>=3.8',
    include_package_data=True,
    package_data={'hermlab': ['suites/*.yaml']},
    zip_safe=False,
    install_requires=requirements,
    extras_require={
        'dev': requirements_dev,
    },
    entry_points={
        'console_scripts': ['hermlab = hermlab.cli:main'],
    },
)
