# This file is part of the dyadnet package
# and is released under Creative Common Attribution 4.0 International (CC BY 4.0)
# see README.txt or LICENSE.txt for details

from setuptools import setup, find_packages

setup(
    name='dyadnet',
    version='0.1.0',
    description='Dyadic network regression with nonparametric unobserved heterogeneity',
    license='CC BY 4.0',
    packages=find_packages(exclude=('tests', 'simulations')),
    python_requires='>=3.8',
    install_requires=['colorama>=0.4', 'numpy>=1.22', 'pandas>=1.4', 'scipy>=1.8'],
    extras_require={'test': ['pytest>=7']},
    entry_points={'console_scripts': ['dyadnet = dyadnet.cli:main']},
)
