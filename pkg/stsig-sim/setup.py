from setuptools import find_namespace_packages, setup

if __name__ == "__main__":
    version = "0.0.1"

    deps = [
        f"stsig-base=={version}",
        "pandas>=1.4.3",
        "numpy<2.0",
        "pydantic>=2.0",
    ]
    strict_deps = [s.replace(">=", "==") for s in deps]

    setup(
        name="stsig-sim",
        install_requires=deps,
        extras_require={"dev": strict_deps, "strict": strict_deps},
        packages=find_namespace_packages(include=["stsig.*"]),
        package_data={"stsig.sim.experiments": ["resources/*.yml"]},
        entry_points={"console_scripts": ["stsig = stsig.sim.cli:main"]},
        version=version,
    )
