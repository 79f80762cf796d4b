"""Build hook for the optional mod-p kernel.

The package is pure Python plus one Cython extension holding the hot loop of
the order-basis computation over a prime field.  The extension is optional:
when Cython or a C compiler is missing the build still succeeds and the
package falls back to the pure-Python kernel at import time.
"""

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class OptionalBuildExt(build_ext):
    def run(self):
        try:
            super().run()
        except Exception as exc:  # compiler missing: fall back to pure Python
            print(f"warning: skipping extension build ({exc})")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            print(f"warning: skipping {ext.name} ({exc})")


def extensions():
    try:
        from Cython.Build import cythonize
    except ImportError:
        return []
    ext = Extension("odemin._modbasis", ["src/odemin/_modbasis.pyx"])
    return cythonize([ext], language_level=3)


setup(ext_modules=extensions(), cmdclass={"build_ext": OptionalBuildExt})
