# Copyright (c) 2025, Center for Digital Humanities, Princeton University
# SPDX-License-Identifier: Apache-2.0

"""
K2 of rational function fields over finite fields, via tame symbols
"""
