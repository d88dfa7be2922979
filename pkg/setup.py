from setuptools import setup, find_packages

setup(
    name="hyperdet",
    version="0.1.0",
    description="Exact Cayley hyperdeterminants of Hankel hypermatrices and the Selberg, Aomoto and Dyson identities.",
    long_description=open("README.md").read(),
    long_description_content_type="text/markdown",
    packages=find_packages(exclude=["tests"]),
    classifiers=[
        "Programming Language :: Python :: 3",
        "License :: OSI Approved :: MIT License",
        "Operating System :: OS Independent",
        "Topic :: Scientific/Engineering :: Mathematics",
    ],
    python_requires=">=3.10",
    install_requires=[
        "pandas==2.2.3",
        "numpy==2.1.3",
        "pydantic==2.10.3",
        "sympy==1.13.3",
    ],
    extras_require={
        "dev": ["pytest", "flake8"],
    },
    entry_points={
        "console_scripts": ["hyperdet=hyperdet.cli:main"],
    },
)
