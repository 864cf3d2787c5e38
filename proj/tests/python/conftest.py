import glob
import os
import shutil
import sys
import tempfile


def pytest_configure(config):
    try:
        import spiraldim  # noqa: F401  (installed wheel)
        return
    except ImportError:
        pass
    moddir = os.environ.get("SPIRALDIM_PYMODULE_DIR")
    src = os.environ.get("SPIRALDIM_PYSRC")
    if not (moddir and src):
        raise RuntimeError(
            "spiraldim not installed; set SPIRALDIM_PYMODULE_DIR and "
            "SPIRALDIM_PYSRC to stage the built extension"
        )
    stage = tempfile.mkdtemp(prefix="spiraldim_py_")
    pkg = os.path.join(stage, "spiraldim")
    os.makedirs(pkg)
    shutil.copy(os.path.join(src, "spiraldim", "__init__.py"), pkg)
    for ext in glob.glob(os.path.join(moddir, "_core*.so")):
        shutil.copy(ext, pkg)
    sys.path.insert(0, stage)
