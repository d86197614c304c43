# -*- encoding: utf-8 -*-
from setuptools import setup, find_packages
import navlog as app

setup(
    name="navlog",
    version=app.__version__,
    description='Navigability checker and proof engine for epistemic transition systems',
    long_description=open('README.rst').read(),
    license='BSD License',
    platforms=['OS Independent'],
    keywords='epistemic logic,navigability,model checking,strategies,proof system',
    packages=find_packages(exclude=['test']),
    package_data={'navlog.fixtures': ['*.ets']},
    include_package_data=True,
    install_requires=['lark'],
    tests_require=['hypothesis'],
    entry_points={
        'console_scripts': ['navlog = navlog.cli:main'],
    },
)
