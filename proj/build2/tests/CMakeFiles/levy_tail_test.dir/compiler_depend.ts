# CMAKE generated file: DO NOT EDIT!
# Timestamp file for compiler generated dependencies management for levy_tail_test.
