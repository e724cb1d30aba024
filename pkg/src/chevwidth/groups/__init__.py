# Copyright (c) 2025, Center for Digital Humanities, Princeton University
# SPDX-License-Identifier: Apache-2.0

"""
Chevalley and Steinberg groups: matrix elements, words and factorizations
"""
