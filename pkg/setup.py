"""homlat: homomorphism lattices of finite algebras.

For a development install with the test dependencies:
pip install -e .[test]
"""
from setuptools import find_packages
from setuptools import setup


setup(
    name='homlat',
    version='0.0.1',
    description='Homomorphism orders and lattices of finite algebras',
    license='Apache 2.0',
    python_requires='>=3.8',
    packages=find_packages(exclude=['tests', 'examples', 'examples.*']),
    py_modules=[
        'algebra',
        'hom_lattice',
        'hom_search',
        'homlat_runner',
        'io_formats',
        'order',
        'random_utils',
        'spec',
        'synth',
    ],
    package_data={
        'checks': ['*/config.json'],
        'fixtures': ['*.json'],
    },
    install_requires=[
        'absl-py>=0.14.0',
        'networkx>=2.5',
        'numpy>=1.19.2',
        'pydotplus>=2.0.2',
    ],
    extras_require={
        'test': [
            'pytest>=7.0',
        ],
    },
    entry_points={
        'console_scripts': [
            'homlat = homlat_runner:run',
        ],
    },
    classifiers=[
        'Development Status :: 3 - Alpha',
        'Intended Audience :: Science/Research',
        'License :: OSI Approved :: Apache Software License',
        'Topic :: Scientific/Engineering :: Mathematics',
    ],
    keywords='universal algebra homomorphism lattice poset congruence',
)
