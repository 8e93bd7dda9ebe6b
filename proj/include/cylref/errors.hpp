#ifndef CYLREF_ERRORS_HPP
#define CYLREF_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace cylref {

/// Any defect in user-supplied data. The CLI maps these to exit code 65.
class InputError : public std::runtime_error {
public:
    InputError(std::string kind, const std::string& msg)
        : std::runtime_error(kind + ": " + msg), kind_(std::move(kind)) {}
    const std::string& kind() const { return kind_; }

private:
    std::string kind_;
};

inline InputError schema_error(const std::string& msg) { return InputError("SchemaError", msg); }
inline InputError bipartite_error(const std::string& msg) { return InputError("BipartiteError", msg); }
inline InputError infinite_cylinder_valence(const std::string& msg) {
    return InputError("InfiniteCylinderValence", msg);
}
inline InputError dangling_reference(const std::string& msg) {
    return InputError("DanglingReference", msg);
}
inline InputError missing_length(const std::string& msg) { return InputError("MissingLength", msg); }
inline InputError different_cylinders(const std::string& msg) {
    return InputError("DifferentCylinders", msg);
}
inline InputError oracle_missing(const std::string& msg) { return InputError("OracleMissing", msg); }
inline InputError ill_posed_query(const std::string& msg) { return InputError("IllPosedQuery", msg); }
inline InputError not_stable(const std::string& msg) { return InputError("NotStable", msg); }
inline InputError infinite_multiplicity(const std::string& msg) {
    return InputError("InfiniteMultiplicity", msg);
}
inline InputError mode_data_missing(const std::string& msg) {
    return InputError("ModeDataMissing", msg);
}

}  // namespace cylref

#endif
