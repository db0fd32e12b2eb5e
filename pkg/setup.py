from setuptools import setup, find_packages

setup(name='toric_real',
    version='0.0.1',
    install_requires=[
        'numpy',
        'sympy>=1.9',
        'tqdm',
        'tabulate>=0.9.0',

        # Dev stuff
        'pytest',
        'flake8',
    ],
    packages=find_packages(exclude=['test', 'test.*']),
    package_dir={'': '.'},
    entry_points={
        'console_scripts': [
            'toric = toric_real.cli:main',
        ],
    },
)
