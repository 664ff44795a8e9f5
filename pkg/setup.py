from setuptools import setup

setup(
    name='linkhom',
    version='0.1.0',
    description='Linked Hom spaces of chains of free modules over Q[t]',
    author='jose',
    packages=['linkhom'],
    python_requires='>=3.9',
    install_requires=['sympy>=1.13'],
    extras_require={
        'test': ['pytest', 'hypothesis'],
    },
    entry_points={
        'console_scripts': [
            'linkhom=linkhom.main:main',
        ],
    },
)
