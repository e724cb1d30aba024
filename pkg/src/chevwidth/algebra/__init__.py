# Copyright (c) 2025, Center for Digital Humanities, Princeton University
# SPDX-License-Identifier: Apache-2.0

"""
exact rings, root systems and Chevalley bases
"""
