# Copyright (c) 2025, Center for Digital Humanities, Princeton University
# SPDX-License-Identifier: Apache-2.0

__version__ = "0.1.0"
