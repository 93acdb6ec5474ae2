#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace boolecc {

using Int = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>,
                                           boost::multiprecision::et_off>;
using Rat = boost::multiprecision::number<
    boost::multiprecision::rational_adaptor<boost::multiprecision::cpp_int_backend<>>,
    boost::multiprecision::et_off>;

class GroupSpec;
using GroupSpecPtr = std::shared_ptr<const GroupSpec>;

/// Description of an Abelian group: integers mod m, unbounded integers,
/// exact rationals (the stand-in for the reals; equality stays decidable),
/// or a finite direct product of such groups.
class GroupSpec {
public:
    enum class Kind { cyclic, integers, rationals, product };

    static GroupSpecPtr cyclic(Int m);
    static GroupSpecPtr integers();
    static GroupSpecPtr rationals();
    static GroupSpecPtr product(std::vector<GroupSpecPtr> parts);

    Kind kind() const { return kind_; }
    const Int& modulus() const { return modulus_; }  // cyclic only
    const std::vector<GroupSpecPtr>& parts() const { return parts_; }

    bool same_as(const GroupSpec& other) const;
    bool is_finite() const;
    /// Number of elements; nullopt when infinite.
    std::optional<Int> size() const;
    std::string describe() const;

private:
    GroupSpec(Kind k, Int m, std::vector<GroupSpecPtr> parts)
        : kind_(k), modulus_(std::move(m)), parts_(std::move(parts)) {}
    Kind kind_;
    Int modulus_;
    std::vector<GroupSpecPtr> parts_;
};

/// One element of a group named by a GroupSpec. Canonical representation:
/// cyclic values are residues in [0, m), rationals are reduced fractions,
/// products hold one canonical value per part. Equality is representation
/// equality. Values are immutable and freely shared between threads.
class GroupValue {
public:
    GroupValue() = default;
    static GroupValue zero(const GroupSpecPtr& spec);
    static GroupValue from_int(const GroupSpecPtr& spec, Int v);        // cyclic reduces mod m
    static GroupValue from_rational(const GroupSpecPtr& spec, Rat v);   // rationals only
    static GroupValue tuple(const GroupSpecPtr& spec, std::vector<GroupValue> vs);

    const GroupSpecPtr& spec() const { return spec_; }
    bool is_zero() const;

    GroupValue add(const GroupValue& o) const;
    GroupValue neg() const;
    GroupValue sub(const GroupValue& o) const { return add(o.neg()); }

    bool operator==(const GroupValue& o) const;
    bool operator!=(const GroupValue& o) const { return !(*this == o); }

    /// Total order used internally by plurality maps; componentwise numeric.
    int compare(const GroupValue& o) const;

    /// Canonical serialization: decimal strings componentwise, composites
    /// joined lexicographically. Used for deterministic tie-breaking.
    std::string canonical() const;

    const Int& as_int() const;   // cyclic / integers payload
    const Rat& as_rational() const;
    const std::vector<GroupValue>& components() const;

private:
    GroupSpecPtr spec_;
    std::variant<Int, Rat, std::vector<GroupValue>> payload_;
};

/// n*g via repeated addition semantics (payload multiplication under the
/// hood); handles negative and zero n.
GroupValue scalar_multiply(const Int& n, const GroupValue& g);

/// Smallest n >= 1 with n*g = 0, or nullopt for infinite order.
std::optional<Int> element_order(const GroupValue& g);

/// Deterministic plurality: most frequent value, ties broken by canonical
/// serialization (lexicographically smallest wins).
GroupValue plurality(const std::vector<GroupValue>& values);

}  // namespace boolecc
