#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "ntcodes/curve.hpp"
#include "ntcodes/field.hpp"

namespace ntc {

enum class Verdict { Pass, Fail, Unsupported };

std::string to_string(Verdict verdict);
/// Accepts pass, fail, unsupported. Throws otherwise.
Verdict verdict_from_string(const std::string& name);

/// A value a result states, with the formula it comes from.
struct Claim {
    std::string name;
    std::string value;
    std::string formula;

    bool operator==(const Claim&) const = default;
};

struct CheckOutcome {
    std::string id;
    std::map<std::string, std::int64_t> params;
    Verdict verdict = Verdict::Pass;
    std::vector<Claim> claimed;
    std::map<std::string, std::string> computed;
    /// Supports, lines or vectors behind a Fail (never empty on Fail).
    std::vector<std::string> witnesses;
    std::vector<std::string> notes;
    double elapsed_ms = 0;
    std::uint64_t seed = 0;

    bool operator==(const CheckOutcome&) const = default;
};

struct LabOptions {
    /// Workers for the weight searches inside a check; 0 means all cores.
    unsigned workers = 0;
    std::uint64_t seed = 0;
    std::function<void(std::uint64_t)> progress;
};

using PlanePoint = std::array<Felt, 3>;

/// |Z| - rank of the degree-d forms evaluated at Z. Throws for d <= 0.
int h1_of_points(const FieldPtr& field, std::span<const PlanePoint> Z, int d);
/// Scales a nonzero triple so its first nonzero coordinate is 1.
PlanePoint normalize_plane_point(const Field& field, PlanePoint p);
/// Largest number of points of Z on one line, by scanning every line.
std::size_t max_collinear(const Field& field, std::span<const PlanePoint> Z);

CheckOutcome check_lemma_h1(const Curve& curve, int d, int trials, const LabOptions& opts = {});
CheckOutcome check_te1(const Curve& curve, int d, const LabOptions& opts = {});
CheckOutcome check_te2(const Curve& curve, int d, const LabOptions& opts = {});
CheckOutcome check_teo_a(const Curve& curve, int d, const LabOptions& opts = {});
CheckOutcome check_cor_one(const Curve& curve, std::int64_t s, const LabOptions& opts = {});
CheckOutcome check_reduc(const Curve& curve, int d, int a, int b, const LabOptions& opts = {});
CheckOutcome check_teo_ab(const Curve& curve, int d, int a, int b, const LabOptions& opts = {});
CheckOutcome check_cdE(const Curve& curve, int d, const std::vector<Point>& E, const LabOptions& opts = {});
CheckOutcome check_dims(const Curve& curve, int d, int a, int b, const LabOptions& opts = {});
CheckOutcome check_castle(const Curve& curve, std::int64_t s, const LabOptions& opts = {});

/// A named check with its integer parameters (and E for the cde check).
struct CheckRequest {
    std::string id;
    std::map<std::string, std::int64_t> params;
    std::vector<Point> E;
};

/// h1, te1, te2, teo_a, cor_one, reduc, teo_ab, cde, dims, castle.
const std::vector<std::string>& check_ids();
/// Throws InvalidArgument for an unknown id or a missing parameter.
CheckOutcome run_check(const Curve& curve, const CheckRequest& request, const LabOptions& opts = {});
/// Runs the requests concurrently; results come back in request order.
std::vector<CheckOutcome> run_checks(const Curve& curve, const std::vector<CheckRequest>& requests,
                                     const LabOptions& opts = {});

std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

}  // namespace ntc
