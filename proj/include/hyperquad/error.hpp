#ifndef HYPERQUAD_ERROR_HPP
#define HYPERQUAD_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace hyperquad {

enum class errc {
    unsupported_parameter,
    domain_error,
    overflow,
    escaped_orbit,
    degenerate_frame,
    boundary_point,
    not_compactly_contained,
    not_monotone,
    critical_point,
    wrong_regime,
    zero_value,
    escalation_failed,
};

inline constexpr std::string_view to_string(errc e) noexcept
{
    switch (e) {
    case errc::unsupported_parameter: return "UnsupportedParameter";
    case errc::domain_error: return "DomainError";
    case errc::overflow: return "Overflow";
    case errc::escaped_orbit: return "EscapedOrbit";
    case errc::degenerate_frame: return "DegenerateFrame";
    case errc::boundary_point: return "BoundaryPoint";
    case errc::not_compactly_contained: return "NotCompactlyContained";
    case errc::not_monotone: return "NotMonotone";
    case errc::critical_point: return "CriticalPoint";
    case errc::wrong_regime: return "WrongRegime";
    case errc::zero_value: return "ZeroValue";
    case errc::escalation_failed: return "EscalationFailed";
    }
    return "Unknown";
}

/// Every failure raised by the library carries one of the `errc` kinds so
/// callers (the CLI in particular) can map it onto an exit status.
class error : public std::runtime_error {
public:
    error(errc kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind)
    {
    }

    errc kind() const noexcept { return kind_; }

private:
    errc kind_;
};

} // namespace hyperquad

#endif
