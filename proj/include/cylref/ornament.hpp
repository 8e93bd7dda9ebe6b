#ifndef CYLREF_ORNAMENT_HPP
#define CYLREF_ORNAMENT_HPP

#include <algorithm>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "cylref/extnat.hpp"

namespace cylref {

using OrnId = std::uint32_t;
constexpr OrnId kInvalidOrn = 0xffffffffu;

enum class OrnKind : std::uint8_t { Base = 0, Neighbor = 1, Signed = 2, Orbit = 3 };

/**
 * One ornament value. Which fields are meaningful depends on the kind:
 *   Base      — tag (a tuple of opaque labels)
 *   Neighbor  — base ornament plus a zero-free count map over ornaments
 *   Signed    — base ornament plus a sign in {-1, 0, +1}
 *   Orbit     — base ornament plus a local-symmetry class token
 */
struct OrnamentData {
    OrnKind kind = OrnKind::Base;
    std::vector<std::string> tag;
    OrnId base = kInvalidOrn;
    std::vector<std::pair<OrnId, ExtNat>> counts;  // sorted by structural key order
    int sign = 0;
    std::uint32_t token = 0;
};

/**
 * Intern table for ornaments.
 *
 * Structurally equal values share an id, so equality on interned values
 * is an id comparison. The total order is structural and does not depend
 * on insertion order, which keeps every downstream canonical form stable
 * under permutations of the input.
 */
class OrnamentUniverse {
public:
    OrnId base(std::vector<std::string> tag) {
        OrnamentData d;
        d.kind = OrnKind::Base;
        d.tag = std::move(tag);
        return intern(std::move(d));
    }

    OrnId neighbor(OrnId base_orn, std::vector<std::pair<OrnId, ExtNat>> counts) {
        OrnamentData d;
        d.kind = OrnKind::Neighbor;
        d.base = base_orn;
        // Drop zero entries so trivially extended count maps coincide, then
        // store in structural key order.
        counts.erase(std::remove_if(counts.begin(), counts.end(),
                                    [](const auto& kv) { return kv.second.is_zero(); }),
                     counts.end());
        std::sort(counts.begin(), counts.end(),
                  [this](const auto& a, const auto& b) { return cmp(a.first, b.first) < 0; });
        d.counts = std::move(counts);
        return intern(std::move(d));
    }

    OrnId signed_wrap(OrnId base_orn, int sign) {
        OrnamentData d;
        d.kind = OrnKind::Signed;
        d.base = base_orn;
        d.sign = sign;
        return intern(std::move(d));
    }

    OrnId orbit(OrnId base_orn, std::uint32_t token) {
        OrnamentData d;
        d.kind = OrnKind::Orbit;
        d.base = base_orn;
        d.token = token;
        return intern(std::move(d));
    }

    const OrnamentData& data(OrnId id) const { return values_[id]; }
    std::size_t size() const { return values_.size(); }

    /// Structural three-way comparison; Base < Neighbor < Signed < Orbit.
    int cmp(OrnId a, OrnId b) const {
        if (a == b) return 0;
        const OrnamentData& da = values_[a];
        const OrnamentData& db = values_[b];
        if (da.kind != db.kind) return da.kind < db.kind ? -1 : 1;
        switch (da.kind) {
            case OrnKind::Base: {
                if (da.tag != db.tag) return da.tag < db.tag ? -1 : 1;
                return 0;
            }
            case OrnKind::Neighbor: {
                if (int c = cmp(da.base, db.base)) return c;
                std::size_t n = std::min(da.counts.size(), db.counts.size());
                for (std::size_t i = 0; i < n; ++i) {
                    if (int c = cmp(da.counts[i].first, db.counts[i].first)) return c;
                    const ExtNat& x = da.counts[i].second;
                    const ExtNat& y = db.counts[i].second;
                    if (x != y) return x < y ? -1 : 1;
                }
                if (da.counts.size() != db.counts.size())
                    return da.counts.size() < db.counts.size() ? -1 : 1;
                return 0;
            }
            case OrnKind::Signed: {
                if (int c = cmp(da.base, db.base)) return c;
                if (da.sign != db.sign) return da.sign < db.sign ? -1 : 1;
                return 0;
            }
            case OrnKind::Orbit: {
                if (int c = cmp(da.base, db.base)) return c;
                if (da.token != db.token) return da.token < db.token ? -1 : 1;
                return 0;
            }
        }
        return 0;
    }

    bool less(OrnId a, OrnId b) const { return cmp(a, b) < 0; }

    /// Initial Base ornament underneath any stack of refinements.
    OrnId base_projection(OrnId id) const {
        while (values_[id].kind != OrnKind::Base) id = values_[id].base;
        return id;
    }

    /**
     * Canonical nested text form. Purely structural (no intern ids), so
     * serializations are comparable across universes and across runs.
     */
    const std::string& serialize(OrnId id) const {
        auto it = serial_cache_.find(id);
        if (it != serial_cache_.end()) return it->second;
        const OrnamentData& d = values_[id];
        std::string s;
        switch (d.kind) {
            case OrnKind::Base: {
                s = "(";
                for (std::size_t i = 0; i < d.tag.size(); ++i) {
                    if (i) s += ",";
                    s += d.tag[i];
                }
                s += ")";
                break;
            }
            case OrnKind::Neighbor: {
                s = "[" + serialize(d.base) + "|";
                for (std::size_t i = 0; i < d.counts.size(); ++i) {
                    if (i) s += ",";
                    s += serialize(d.counts[i].first) + ":" + d.counts[i].second.str();
                }
                s += "]";
                break;
            }
            case OrnKind::Signed: {
                s = "[" + serialize(d.base) + "|s=" + std::to_string(d.sign) + "]";
                break;
            }
            case OrnKind::Orbit: {
                s = "[" + serialize(d.base) + "|o=" + std::to_string(d.token) + "]";
                break;
            }
        }
        return serial_cache_.emplace(id, std::move(s)).first->second;
    }

private:
    OrnId intern(OrnamentData d) {
        std::string key = hash_key(d);
        auto it = index_.find(key);
        if (it != index_.end()) return it->second;
        OrnId id = static_cast<OrnId>(values_.size());
        values_.push_back(std::move(d));
        index_.emplace(std::move(key), id);
        return id;
    }

    // Exact byte key: children are already interned, so their ids are
    // canonical within this universe and may appear in the key.
    static std::string hash_key(const OrnamentData& d) {
        std::string k;
        k += static_cast<char>('0' + static_cast<int>(d.kind));
        switch (d.kind) {
            case OrnKind::Base:
                for (const auto& t : d.tag) {
                    k += '\x01';
                    k += t;
                }
                break;
            case OrnKind::Neighbor:
                k += std::to_string(d.base);
                for (const auto& kv : d.counts) {
                    k += '\x01';
                    k += std::to_string(kv.first);
                    k += ':';
                    k += kv.second.str();
                }
                break;
            case OrnKind::Signed:
                k += std::to_string(d.base);
                k += '\x01';
                k += std::to_string(d.sign);
                break;
            case OrnKind::Orbit:
                k += std::to_string(d.base);
                k += '\x01';
                k += std::to_string(d.token);
                break;
        }
        return k;
    }

    std::vector<OrnamentData> values_;
    std::unordered_map<std::string, OrnId> index_;
    mutable std::unordered_map<OrnId, std::string> serial_cache_;
};

}  // namespace cylref

#endif
