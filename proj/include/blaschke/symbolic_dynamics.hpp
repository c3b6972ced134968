#pragma once

#include <iosfwd>
#include <vector>

#include "blaschke/fatou_classifier.hpp"
#include "blaschke/types.hpp"

namespace blaschke {

// One labeled component surrounding the origin. Label 0 is the filled
// critical annulus (the component of c_- with its inner pocket filled);
// every other label is an iterated preimage of it, reached in `depth` steps.
// image_id is the label one application of the map lands in (-1 for label 0,
// whose image is not a single band).
struct AnnulusLabel {
    int id = 0;
    double r_min = 0.0, r_max = 0.0;   // radial hull of the band
    int depth = 0;
    int image_id = -1;
};

enum class ItineraryTerminal { Escaped, BudgetExhausted, LeftLabeledSet };

struct Itinerary {
    std::vector<int> symbols;
    ItineraryTerminal terminal = ItineraryTerminal::BudgetExhausted;
};

enum class ViolationKind {
    ConsecutiveZeros,        // 0 may never follow 0
    ZeroNotFollowedIntoW3,   // after 0 the orbit must enter a band inside the
                             // image annulus of the critical component
    ImageLinkMismatch,       // label i must be followed by image_id(i)
    UnknownLabel,            // symbol not in the table
};

struct ItineraryViolation {
    int position = 0;   // index of the offending symbol
    ViolationKind kind = ViolationKind::UnknownLabel;
};

struct PolarResolution {
    int n_theta = 2048;
    int n_r = 8192;
};

// Label table with the per-angle radial extents needed for membership
// lookups. Bands are wavy; global hulls of different bands may overlap, so
// membership is always per angle bin.
class LabelTable {
public:
    const std::vector<AnnulusLabel>& labels() const { return labels_; }
    double w3_outer_edge() const { return w3_outer_edge_; }
    int n_theta() const { return n_theta_; }

    // Label id containing z, or -1.
    int find_band(Complex z) const;

    // A point verified to lie in the band at this angle bin (the median
    // raster cell the detector saw there); 0 when the bin is empty.
    Complex sample_point(int id, int angle_bin) const;

    // internal representation, needed by the builder
    struct Band {
        AnnulusLabel label;
        std::vector<double> lo;    // per angle bin, lookup extent; <0 marks an empty bin
        std::vector<double> hi;
        std::vector<double> mid;   // per angle bin, a radius the detector verified
    };

    LabelTable(std::vector<Band> bands, double w3_edge, int n_theta);

private:
    std::vector<Band> bands_;
    std::vector<AnnulusLabel> labels_;
    double w3_outer_edge_ = 0.0;
    int n_theta_ = 0;
};

// Detects the filled critical annulus and the iterated preimages of it that
// surround the origin, up to max_depth map applications, on a polar raster
// between sqrt(|lambda|/3) and |z| = 2. Requires classify(p) == CaseC.
// Throws LabelingError when bands cannot be separated at this resolution.
LabelTable label_annuli(const ParameterPair& p, int max_depth, PolarResolution res = {},
                        const ClassifierBudget& budget = {}, int n_threads = 0);

// Emits the label id of each iterate while the orbit stays in labeled
// bands; otherwise terminates with Escaped (the remaining orbit escapes),
// LeftLabeledSet, or BudgetExhausted after max_steps symbols.
Itinerary compute_itinerary(const ParameterPair& p, const LabelTable& labels, Complex z,
                            int max_steps, double rho = kDefaultRho);

// Realizability checks: no two consecutive zeros; a zero is followed by a
// band radially inside the critical component's image annulus; label i is
// followed exactly by image_id(i). Empty result means realizable so far.
std::vector<ItineraryViolation> check_itinerary(const LabelTable& labels, const Itinerary& it);

// Plain-text label table: id, r_min, r_max, depth, image_id.
void write_labels(std::ostream& os, const LabelTable& table);

}  // namespace blaschke
