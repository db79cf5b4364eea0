// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 tlg authors
#pragma once

#include <stdexcept>
#include <string>

namespace tlg {

// keep in sync with tlg_c.h
enum class Err : int {
  Ok = 0,
  ConfigInvalid = 1,
  SignatureMismatch = 2,
  PoleAtSpecialValue = 3,
  IndexOutOfRange = 4,
  InconsistentCycle = 5,
  StateSpaceTooLarge = 6,
  ComponentCapExceeded = 7,
  WindowDoesNotFit = 8,
  MismatchAtGrade = 9,
  OracleMismatch = 10,
  BackendMismatch = 11,
  Internal = 12,
};

const char* err_name(Err e);

// 0 ok, 2 config, 3 capacity, 4 invariant, 5 oracle
int exit_code_for(Err e);

class Error : public std::runtime_error {
 public:
  Error(Err code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Err code() const { return code_; }

 private:
  Err code_;
};

[[noreturn]] inline void fail(Err code, const std::string& what) { throw Error(code, what); }

}  // namespace tlg
