from setuptools import setup

setup(
    name="hvks",
    version="0.1.0",
    packages=["hvks"],
    description="Hidden-variable embeddings and the Kochen-Specker " +
                "contradiction, verified numerically",
    long_description=open("README.md").read(),
    package_data={"": ["README.md"]},
    include_package_data=True,
    classifiers=[
        "Development Status :: 3 - Alpha",
        "Intended Audience :: Science/Research",
        "Operating System :: OS Independent",
        "Programming Language :: Python :: 3",
        "Topic :: Scientific/Engineering :: Physics",
        ],
    python_requires=">=3.7",
    install_requires=["numpy", "scipy", "future", "lark",
                      "tomli; python_version < '3.11'"],
    entry_points={"console_scripts": ["hvks = hvks.cli:main"]}
)
