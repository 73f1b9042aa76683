from setuptools import setup

package = "aoisched"
version = "0.1.0"


def read_file(filename):
    try:
        with open(filename) as f:
            return f.read()
    except Exception:
        return ""

long_description = read_file("README.rst") or read_file("README.md")
install_requires = [line.strip() for line in read_file("requirements.txt").splitlines()
                    if line.strip() and not line.startswith("setuptools")]
entry_points = {
    "console_scripts": [
        "aoisched = aoisched.cli:main",
    ],
}

setup(
    name=package,
    version=version,
    description="AoI-optimal offline scheduling of update packets through a transmit and a compute stage",
    long_description=long_description,
    long_description_content_type="text/markdown",
    packages=[package],
    classifiers=[
        "License :: OSI Approved :: Apache Software License",
        "Operating System :: POSIX",
        "Programming Language :: Python",
        "Programming Language :: Python :: 3",
        "Programming Language :: Python :: 3.7",
        "Programming Language :: Python :: 3.8",
        "Programming Language :: Python :: 3.9",
        "Programming Language :: Python :: 3.10",
        "Topic :: Scientific/Engineering :: Mathematics",
    ],
    scripts=[],
    python_requires=">=3.7",
    install_requires=install_requires,
    extras_require={"test": ["pytest>=6.0"]},
    setup_requires=[],
    entry_points=entry_points)
