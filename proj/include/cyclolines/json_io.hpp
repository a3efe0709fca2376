#pragma once

#include <string>

#include <json.hpp>

#include "cyclolines/abelian.hpp"
#include "cyclolines/constructions.hpp"
#include "cyclolines/lineset.hpp"
#include "cyclolines/spin.hpp"

namespace cyclolines {

using Json = nlohmann::ordered_json;

// Canonical encoding {"order": n, "coeffs": [[num, den], ...]} with phi(n)
// reduced fractions, den > 0.
Json cyclotomic_to_json(const Cyclotomic& x);
Cyclotomic cyclotomic_from_json(const Json& j);

// {"dim", "backend", "cyclotomic_order", "vectors", "partition", "meta"};
// exact entries are Cyclotomic objects, float entries [re, im] pairs.
Json lineset_to_json(const LineSet& ls);
LineSet lineset_from_json(const Json& j, double tolerance);

// {"kind": "matrix", "order", "backend", "entries", "meta", flags}
Json matrix_to_json(const TypeIIMatrix& m);
TypeIIMatrix matrix_from_json(const Json& j, double tolerance);

// plain square matrix (unitaries for `compare`); accepts either a "matrix"
// payload or a bare array of rows of Cyclotomic objects
CycMatrix cyc_matrix_from_json(const Json& j);

// {"group", "subset", "params", "kind": "ds"|"rds", "verified"}
Json ds_certificate_to_json(const AbelianGroup& G, const std::vector<int>& D,
                            const DifferenceSetCheck& check);
Json rds_certificate_to_json(const AbelianGroup& G, const std::vector<int>& N,
                             const std::vector<int>& D, const RelativeDifferenceSetCheck& check);

Json equiangular_report_to_json(const EquiangularReport& rep);
Json mub_report_to_json(const MubReport& rep);
Json fiducial_report_to_json(const FiducialDiagnostics& diag);
Json spin_report_to_json(const TypeIICheck& t2, const SpinCheck& spin);
Json spin_duality_report_to_json(const SpinDualityReport& rep);

}  // namespace cyclolines
