/*
   Copyright 2026 The towerforge Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#ifndef TOWERFORGE_ERROR_HPP
#define TOWERFORGE_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace towerforge {

enum class ErrorKind {
    // galois fields
    NotIrreducible,
    TableMiss,
    SizeExceeded,
    FieldMismatch,
    DivisionByZero,
    BadPower,
    NotPrimitive,
    NotASubfield,
    // polynomials
    DomainMismatch,
    InexactDivision,
    NotMonic,
    DenominatorVanishes,
    ZeroPolynomial,
    NotInvertible,
    ParseError,
    // skew polynomials
    EliminationMismatch,
    // catalog
    PsiMismatch,
    BadModulus,
    NotInCatalog,
    DivisionFails,
    NoCertifyingSpecialization,
    // engine
    LeadingVanishes,
    BacktrackDivisionFails,
    InconsistentData,
    NoGenusRecipe,
    PrecisionExhausted,
    // files / cli
    SchemaError,
    FieldError,
    DegreeZeroStep,
    Usage,
};

constexpr std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::NotIrreducible: return "NotIrreducible";
        case ErrorKind::TableMiss: return "TableMiss";
        case ErrorKind::SizeExceeded: return "SizeExceeded";
        case ErrorKind::FieldMismatch: return "FieldMismatch";
        case ErrorKind::DivisionByZero: return "DivisionByZero";
        case ErrorKind::BadPower: return "BadPower";
        case ErrorKind::NotPrimitive: return "NotPrimitive";
        case ErrorKind::NotASubfield: return "NotASubfield";
        case ErrorKind::DomainMismatch: return "DomainMismatch";
        case ErrorKind::InexactDivision: return "InexactDivision";
        case ErrorKind::NotMonic: return "NotMonic";
        case ErrorKind::DenominatorVanishes: return "DenominatorVanishes";
        case ErrorKind::ZeroPolynomial: return "ZeroPolynomial";
        case ErrorKind::NotInvertible: return "NotInvertible";
        case ErrorKind::ParseError: return "ParseError";
        case ErrorKind::EliminationMismatch: return "EliminationMismatch";
        case ErrorKind::PsiMismatch: return "PsiMismatch";
        case ErrorKind::BadModulus: return "BadModulus";
        case ErrorKind::NotInCatalog: return "NotInCatalog";
        case ErrorKind::DivisionFails: return "DivisionFails";
        case ErrorKind::NoCertifyingSpecialization: return "NoCertifyingSpecialization";
        case ErrorKind::LeadingVanishes: return "LeadingVanishes";
        case ErrorKind::BacktrackDivisionFails: return "BacktrackDivisionFails";
        case ErrorKind::InconsistentData: return "InconsistentData";
        case ErrorKind::NoGenusRecipe: return "NoGenusRecipe";
        case ErrorKind::PrecisionExhausted: return "PrecisionExhausted";
        case ErrorKind::SchemaError: return "SchemaError";
        case ErrorKind::FieldError: return "FieldError";
        case ErrorKind::DegreeZeroStep: return "DegreeZeroStep";
        case ErrorKind::Usage: return "Usage";
    }
    return "Unknown";
}

/// Every failure raised by the library carries a machine-readable kind.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace towerforge

#endif  // TOWERFORGE_ERROR_HPP
