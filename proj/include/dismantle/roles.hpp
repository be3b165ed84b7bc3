#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace dismantle {

enum class RoleKind {
    boss,
    messaggero,
    caporegime,
    deputy_caporegime,
    soldier,
    associate,
    relative,
    cohabitee,
    fugitive,
    charged,
    in_jail,
    figurehead,
    unclear,
};

enum class AssociateType {
    entrepreneur,
    pharmacist,
    lawyer,
    electrician,
    city_employee,
    transporter,
    cooperating_witness,
    landowner,
    bar_owner,
    fishmonger,
    accountant,
    breeder,
    construction_worker,
    external_partnership,
};

class UnknownRoleError : public std::runtime_error {
public:
    explicit UnknownRoleError(const std::string& what) : std::runtime_error(what) {}
};

// subtype is present iff kind == associate.
struct Role {
    RoleKind kind = RoleKind::unclear;
    std::optional<AssociateType> subtype;

    bool operator==(const Role& other) const {
        return kind == other.kind && subtype == other.subtype;
    }
    bool operator!=(const Role& other) const { return !(*this == other); }

    static Role of(RoleKind k) { return Role{k, std::nullopt}; }
    static Role associate(AssociateType t) { return Role{RoleKind::associate, t}; }
};

namespace detail {

struct RoleKindName {
    RoleKind kind;
    std::string_view name;
};
inline constexpr std::array<RoleKindName, 13> role_kind_names{{
    {RoleKind::boss, "boss"},
    {RoleKind::messaggero, "messaggero"},
    {RoleKind::caporegime, "caporegime"},
    {RoleKind::deputy_caporegime, "deputy_caporegime"},
    {RoleKind::soldier, "soldier"},
    {RoleKind::associate, "associate"},
    {RoleKind::relative, "relative"},
    {RoleKind::cohabitee, "cohabitee"},
    {RoleKind::fugitive, "fugitive"},
    {RoleKind::charged, "charged"},
    {RoleKind::in_jail, "in_jail"},
    {RoleKind::figurehead, "figurehead"},
    {RoleKind::unclear, "unclear"},
}};

struct AssociateTypeName {
    AssociateType type;
    std::string_view name;
};
inline constexpr std::array<AssociateTypeName, 14> associate_type_names{{
    {AssociateType::entrepreneur, "entrepreneur"},
    {AssociateType::pharmacist, "pharmacist"},
    {AssociateType::lawyer, "lawyer"},
    {AssociateType::electrician, "electrician"},
    {AssociateType::city_employee, "city_employee"},
    {AssociateType::transporter, "transporter"},
    {AssociateType::cooperating_witness, "cooperating_witness"},
    {AssociateType::landowner, "landowner"},
    {AssociateType::bar_owner, "bar_owner"},
    {AssociateType::fishmonger, "fishmonger"},
    {AssociateType::accountant, "accountant"},
    {AssociateType::breeder, "breeder"},
    {AssociateType::construction_worker, "construction_worker"},
    {AssociateType::external_partnership, "external_partnership"},
}};

}  // namespace detail

inline std::string_view role_kind_name(RoleKind k) {
    for (const auto& e : detail::role_kind_names)
        if (e.kind == k) return e.name;
    return "unclear";
}

inline std::string_view associate_type_name(AssociateType t) {
    for (const auto& e : detail::associate_type_names)
        if (e.type == t) return e.name;
    return "entrepreneur";
}

inline std::optional<RoleKind> role_kind_from_name(std::string_view name) {
    for (const auto& e : detail::role_kind_names)
        if (e.name == name) return e.kind;
    return std::nullopt;
}

inline std::optional<AssociateType> associate_type_from_name(std::string_view name) {
    for (const auto& e : detail::associate_type_names)
        if (e.name == name) return e.type;
    return std::nullopt;
}

// Strict parse: unknown role or subtype strings are rejected, and a subtype
// is accepted exactly when the kind is associate.
inline Role parse_role(std::string_view kind_str, std::string_view subtype_str) {
    auto kind = role_kind_from_name(kind_str);
    if (!kind)
        throw UnknownRoleError("unknown role \"" + std::string(kind_str) + "\"");
    if (*kind == RoleKind::associate) {
        if (subtype_str.empty())
            throw UnknownRoleError("associate role requires a subtype");
        auto sub = associate_type_from_name(subtype_str);
        if (!sub)
            throw UnknownRoleError("unknown associate subtype \"" + std::string(subtype_str) + "\"");
        return Role::associate(*sub);
    }
    if (!subtype_str.empty())
        throw UnknownRoleError("subtype \"" + std::string(subtype_str) +
                               "\" given for non-associate role \"" + std::string(kind_str) + "\"");
    return Role::of(*kind);
}

inline std::string role_display_name(const Role& r) {
    if (r.subtype) return std::string(associate_type_name(*r.subtype));
    return std::string(role_kind_name(r.kind));
}

}  // namespace dismantle
