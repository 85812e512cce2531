from setuptools import find_namespace_packages, setup

base_packages = find_namespace_packages(where="stsig-base", include=["stsig.*"])
sim_packages = find_namespace_packages(where="stsig-sim", include=["stsig.*"])

setup(
    name="stsig",
    packages=base_packages + sim_packages,
    package_dir={
        **{p: "stsig-base/" + p.replace(".", "/") for p in base_packages},
        **{p: "stsig-sim/" + p.replace(".", "/") for p in sim_packages},
    },
    package_data={"stsig.sim.experiments": ["resources/*.yml"]},
    python_requires=">=3.9",
    version="0.0.1",
    license="MIT",
    author="Jeroen van den Hoven",
)
