// Copyright 2026 The vfsynth Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef VFSYNTH_CORE_STATUS_MACROS_H_
#define VFSYNTH_CORE_STATUS_MACROS_H_

#include "absl/status/status.h"
#include "absl/status/statusor.h"

#define VFS_RETURN_IF_ERROR(expr)          \
  do {                                     \
    const absl::Status _vfs_status = (expr); \
    if (!_vfs_status.ok()) return _vfs_status; \
  } while (0)

#define VFS_CONCAT_INNER(a, b) a##b
#define VFS_CONCAT(a, b) VFS_CONCAT_INNER(a, b)

#define VFS_ASSIGN_OR_RETURN_IMPL(tmp, lhs, rexpr) \
  auto tmp = (rexpr);                              \
  if (!tmp.ok()) return tmp.status();              \
  lhs = std::move(tmp).value()

// Evaluates `rexpr` (a StatusOr) and either returns its error or moves the
// value into `lhs`, which may be a declaration.
#define VFS_ASSIGN_OR_RETURN(lhs, rexpr) \
  VFS_ASSIGN_OR_RETURN_IMPL(VFS_CONCAT(_vfs_statusor_, __LINE__), lhs, rexpr)

#endif  // VFSYNTH_CORE_STATUS_MACROS_H_
