#pragma once

#include <stdexcept>
#include <string>

namespace shimura {

enum class ErrorCode {
    InvalidInput,
    InvalidDiscriminant,
    MalformedFieldSpec,
    NonAbelianField,
    MalformedInput,
    DegreeUnsupported,
    MissingSuppliedData,
    UnsupportedDiscriminant,
    NotPrincipal,
    ExhaustedSearch,
    BudgetExceeded,
    NoKnownModel,
};

const char* to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error
{
  public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message)
        , code_(code)
    {
    }

    ErrorCode code() const noexcept { return code_; }

  private:
    ErrorCode code_;
};

} // namespace shimura
