from setuptools import setup, find_packages

setup(
    name="riccati-disks",
    version="0.1.0",
    description="Invariant-disk enclosures for the Riccati equation y' = V - y^2",
    packages=find_packages(exclude=["tests", "tests.*", "examples", "examples.*"]),
    py_modules=["riccati_disks"],
    install_requires=[
        'numpy',
        'scipy>=1.12',
        'pandas',
        'pydantic>=2',
        'python-dotenv',
        'tqdm',
    ],
    extras_require={
        'test': ['pytest', 'pytest-cov', 'hypothesis'],
    },
    entry_points={
        'console_scripts': ['riccati-disks=riccati_disks:main'],
    },
    python_requires='>=3.9',
)
