/*
 * Copyright 2026 the otsectest authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#include "otsectest/error.hpp"

namespace otsectest {

std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
    case ErrorKind::MalformedRow: return "MalformedRow";
    case ErrorKind::DuplicateId: return "DuplicateId";
    case ErrorKind::UnknownEnumValue: return "UnknownEnumValue";
    case ErrorKind::EmptyComponent: return "EmptyComponent";
    case ErrorKind::NotARange: return "NotARange";
    case ErrorKind::UnitMismatch: return "UnitMismatch";
    case ErrorKind::MalformedVersion: return "MalformedVersion";
    case ErrorKind::MalformedVector: return "MalformedVector";
    case ErrorKind::DuplicateMetric: return "DuplicateMetric";
    case ErrorKind::MissingMetric: return "MissingMetric";
    case ErrorKind::OutOfRange: return "OutOfRange";
    case ErrorKind::DanglingReference: return "DanglingReference";
    case ErrorKind::UnknownAsset: return "UnknownAsset";
    case ErrorKind::SchemaViolation: return "SchemaViolation";
    case ErrorKind::NondeterministicMachine: return "NondeterministicMachine";
    case ErrorKind::UnreachableTransition: return "UnreachableTransition";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::UndefinedInput: return "UndefinedInput";
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::UnboundIdentifier: return "UnboundIdentifier";
    case ErrorKind::TypeMismatch: return "TypeMismatch";
    case ErrorKind::UndefinedAction: return "UndefinedAction";
    case ErrorKind::DigestMismatch: return "DigestMismatch";
    case ErrorKind::Io: return "Io";
    case ErrorKind::Config: return "Config";
    }
    return "Unknown";
}

}  // namespace otsectest
