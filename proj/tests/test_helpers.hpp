#pragma once

#include "folcoh/form.hpp"
#include "folcoh/model.hpp"

#include <fstream>
#include <sstream>
#include <vector>

namespace folcoh::testing {

// All strictly increasing multi-indices over 0..n-1 of the given degree,
// in lexicographic order.
inline std::vector<MultiIndex> all_indices(int n, int degree) {
    std::vector<MultiIndex> out;
    MultiIndex cur;
    auto rec = [&](auto&& self, int start) -> void {
        if (static_cast<int>(cur.size()) == degree) {
            out.push_back(cur);
            return;
        }
        for (int i = start; i < n; ++i) {
            cur.push_back(i);
            self(self, i + 1);
            cur.pop_back();
        }
    };
    rec(rec, 0);
    return out;
}

inline std::vector<Form> all_monomials(int n, int degree) {
    std::vector<Form> out;
    for (const auto& idx : all_indices(n, degree))
        out.push_back(Form::monomial(idx));
    return out;
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

inline Model load_manifest(const std::string& name,
                           const std::map<std::string, Scalar>& overrides = {}) {
    return parse_manifest(read_file(std::string(FOLCOH_MANIFEST_DIR) + "/" + name), overrides);
}

} // namespace folcoh::testing
