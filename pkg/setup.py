from setuptools import setup

setup(
    name="cstop",
    version="0.1dev",
    packages=["cstop", "cstop.scripts"],
    install_requires=["click>=8.0,<8.2", "click-log"],
    extras_require={"test": ["pytest", "hypothesis"]},
    entry_points={"console_scripts": ["cstop=cstop.scripts.cli:cstop"]},
    license="GNU General Public License v3.0",
    long_description=open("README.md").read(),
)
