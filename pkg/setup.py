from setuptools import setup, find_packages

setup(
    name='wiman_lab',
    version='0.1.0',
    packages=find_packages(exclude=['tests', 'tests.*', 'examples', 'examples.*']),
    install_requires=['numpy>=1.24.4', 'pandas', 'scipy>=1.10', 'typer', 'python-dotenv'],
    entry_points={
        'console_scripts': ['wiman-lab=wiman_lab.cli.main:app'],
    },
    author='',
    author_email='',
    description='Numerical laboratory for Wiman-type inequalities in several complex variables',
    url='',
)
