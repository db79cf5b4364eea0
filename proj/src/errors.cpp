// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 tlg authors
#include "tlg/errors.hpp"

namespace tlg {

const char* err_name(Err e) {
  switch (e) {
    case Err::Ok: return "Ok";
    case Err::ConfigInvalid: return "ConfigInvalid";
    case Err::SignatureMismatch: return "SignatureMismatch";
    case Err::PoleAtSpecialValue: return "PoleAtSpecialValue";
    case Err::IndexOutOfRange: return "IndexOutOfRange";
    case Err::InconsistentCycle: return "InconsistentCycle";
    case Err::StateSpaceTooLarge: return "StateSpaceTooLarge";
    case Err::ComponentCapExceeded: return "ComponentCapExceeded";
    case Err::WindowDoesNotFit: return "WindowDoesNotFit";
    case Err::MismatchAtGrade: return "MismatchAtGrade";
    case Err::OracleMismatch: return "OracleMismatch";
    case Err::BackendMismatch: return "BackendMismatch";
    case Err::Internal: return "Internal";
  }
  return "Unknown";
}

int exit_code_for(Err e) {
  switch (e) {
    case Err::Ok: return 0;
    case Err::ConfigInvalid:
    case Err::IndexOutOfRange:
    case Err::BackendMismatch:
    case Err::SignatureMismatch: return 2;
    case Err::StateSpaceTooLarge:
    case Err::ComponentCapExceeded:
    case Err::WindowDoesNotFit: return 3;
    case Err::PoleAtSpecialValue:
    case Err::InconsistentCycle:
    case Err::Internal: return 4;
    case Err::MismatchAtGrade:
    case Err::OracleMismatch: return 5;
  }
  return 4;
}

}  // namespace tlg
