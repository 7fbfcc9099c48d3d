from setuptools import setup, find_packages

setup(
    name='pychen',
    version='0.1.0',
    packages=find_packages(exclude=['tests', 'tests.*', 'examples', 'examples.*']),
    package_data={'pychen': ['angle_units.txt']},
    install_requires=[
        'numpy',
        'scipy',
        'pandas',
        'pint',
        'tqdm',
        'networkx',
    ],
    extras_require={'test': ['pytest']},
    entry_points={'console_scripts': ['pychen=pychen.cli:main']},
    description='Numerical verification of finite-type hypersurfaces in quaternionic space forms',
    long_description=open('README.md').read(),
    long_description_content_type='text/markdown',
    license='MIT',
    classifiers=[
        "Programming Language :: Python :: 3",
        "License :: OSI Approved :: MIT License",
        "Operating System :: OS Independent",
    ],
    python_requires='>=3.8',
)
