"""
To install RenewKit from source, a cloned repository or an archive, use
``python setup.py install``.

Use ``python setup.py bdist_wheel`` to make a wheel.
"""

# try to use setuptools if available, otherwise fall back on distutils
try:
    from setuptools import setup
except ImportError:
    from distutils.core import setup
from renewkit import __version__, __author__, __email__, __url__
import os

README = 'README.rst'
try:
    with open(os.path.join(os.path.dirname(__file__), README), 'r') as readme:
        README = readme.read()
except IOError:
    pass

REQUIRES = [
    'numpy', 'scipy', 'jsonschema', 'dulwich', 'sphinx', 'pytest', 'sympy'
]
INST_REQ = ['%s%s' % (r[0], r[1][1:-1]) if len(r) == 2 else r[0]
            for r in (r.split() for r in REQUIRES)]

setup(name='RenewKit',
      version=__version__,
      description='Renewal process limit law verification toolkit',
      long_description=README,
      author=__author__,
      author_email=__email__,
      url=__url__,
      packages=['renewkit', 'renewkit.core', 'renewkit.tests'],
      requires=REQUIRES,
      install_requires=INST_REQ,
      license='BSD 3-clause',
      scripts=['renewkit-verify.py'],
      entry_points={'console_scripts': ['renewkit = renewkit.cli:main']},
      package_data={
          'renewkit': ['docs/conf.py', 'docs/*.rst', 'docs/api/*.rst'
                       ],
          'renewkit.core': ['acceptance.json']
      })
