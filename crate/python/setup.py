"""Builds the native extension with cargo and drops the cdylib into the package.

The extension crate lives in the cargo workspace one directory up; setuptools
only orchestrates `cargo build --release -p repgrowth-py` and copies the
resulting shared library to wherever build_ext expects the module.
"""

import shutil
import subprocess
from pathlib import Path

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext

WORKSPACE = Path(__file__).resolve().parent.parent
CDYLIB = "librepgrowth_py.so"


class CargoExtension(Extension):
    def __init__(self, name: str, crate: str):
        super().__init__(name, sources=[])
        self.crate = crate


class CargoBuildExt(build_ext):
    def build_extension(self, ext: Extension) -> None:
        if not isinstance(ext, CargoExtension):
            super().build_extension(ext)
            return
        subprocess.run(
            ["cargo", "build", "--release", "-p", ext.crate],
            cwd=WORKSPACE,
            check=True,
        )
        built = WORKSPACE / "target" / "release" / CDYLIB
        dest = Path(self.get_ext_fullpath(ext.name))
        dest.parent.mkdir(parents=True, exist_ok=True)
        shutil.copy2(built, dest)


setup(
    ext_modules=[CargoExtension("repgrowth._native", crate="repgrowth-py")],
    cmdclass={"build_ext": CargoBuildExt},
)
