from __future__ import print_function

try:
    from setuptools import setup
    # print('installing with setuptools')
except ImportError:
    from distutils.core import setup
    # print('installing with distutils')


long_description = open('README.rst').read()

classifiers = ['Development Status :: 4 - Beta',
               'Intended Audience :: Science/Research',
               'License :: OSI Approved :: BSD License',
               'Operating System :: MacOS',
               'Operating System :: Microsoft :: Windows',
               'Operating System :: POSIX',
               'Operating System :: Unix',
               'Programming Language :: Python :: 3',
               'Topic :: Scientific/Engineering :: Physics',
               'Topic :: Scientific/Engineering :: Mathematics']

setup(name='evopiezo',
      version='1.0',
      description=('Well-posedness checks and time stepping for evolutionary equations ' +
                   'of coupled thermo-piezo-electro-magnetic media'),
      long_description=long_description,
      author='The evopiezo developers',
      license='BSD 2-Clause',
      classifiers=classifiers,
      packages=['evopiezo',
                'evopiezo/builder',
                'evopiezo/cli',
                'evopiezo/specfunc',
                'evopiezo/wellposed',
                'evopiezo/tests'],
      zip_safe=False,
      python_requires='>=3.7',
      install_requires=['numpy', 'scipy>=1.12', 'tomli; python_version<"3.11"'],
      entry_points={'console_scripts': ['evopiezo=evopiezo.cli.main:main']})
