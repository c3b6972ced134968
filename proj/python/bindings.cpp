#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "blaschke/critical_finder.hpp"
#include "blaschke/fatou_classifier.hpp"
#include "blaschke/orbit_engine.hpp"
#include "blaschke/rational_map.hpp"
#include "blaschke/render.hpp"
#include "blaschke/suites.hpp"
#include "blaschke/symbolic_dynamics.hpp"

namespace py = pybind11;
using namespace blaschke;

namespace {

py::array_t<std::uint8_t> image_to_numpy(const ImageBuffer& img) {
    py::array_t<std::uint8_t> out({img.height, img.width, 3});
    std::memcpy(out.mutable_data(), img.pixels.data(), img.pixels.size());
    return out;
}

ImageBuffer numpy_to_image(const py::array_t<std::uint8_t, py::array::c_style | py::array::forcecast>& arr) {
    if (arr.ndim() != 3 || arr.shape(2) != 3) throw std::invalid_argument("expected an (h, w, 3) uint8 array");
    ImageBuffer img;
    img.height = static_cast<int>(arr.shape(0));
    img.width = static_cast<int>(arr.shape(1));
    img.pixels.assign(arr.data(), arr.data() + arr.size());
    return img;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Dynamics of singularly perturbed Blaschke products";

    py::class_<ParameterPair>(m, "ParameterPair")
        .def(py::init<Complex, Complex>(), py::arg("a"), py::arg("lam"))
        .def_readwrite("a", &ParameterPair::a)
        .def_readwrite("lam", &ParameterPair::lambda)
        .def("valid", &ParameterPair::valid)
        .def("__repr__", [](const ParameterPair& p) {
            std::ostringstream os;
            os << "ParameterPair(a=(" << p.a.real() << "+" << p.a.imag() << "j), lam=("
               << p.lambda.real() << "+" << p.lambda.imag() << "j))";
            return os.str();
        });

    py::class_<ExtendedComplex>(m, "ExtendedComplex")
        .def(py::init<Complex>())
        .def_static("infinity", &ExtendedComplex::infinity)
        .def("is_infinity", &ExtendedComplex::is_infinity)
        .def("value", &ExtendedComplex::value)
        .def("modulus", &ExtendedComplex::modulus)
        .def("__complex__", [](const ExtendedComplex& z) {
            if (z.is_infinity()) throw std::overflow_error("point at infinity");
            return z.value();
        })
        .def("__repr__", [](const ExtendedComplex& z) {
            if (z.is_infinity()) return std::string("ExtendedComplex(inf)");
            std::ostringstream os;
            os << "ExtendedComplex(" << z.value().real() << "+" << z.value().imag() << "j)";
            return os.str();
        });
    py::implicitly_convertible<Complex, ExtendedComplex>();

    m.def("eval", &eval, py::arg("p"), py::arg("z"));
    m.def("eval", [](const ParameterPair& p, Complex z) { return eval(p, z); }, py::arg("p"),
          py::arg("z"));
    m.def("eval_derivative", &eval_derivative, py::arg("p"), py::arg("z"));
    m.def("eval_second_derivative", &eval_second_derivative, py::arg("p"), py::arg("z"));
    m.def("eval_blaschke", &eval_blaschke, py::arg("a"), py::arg("z"));
    m.def("eval_blaschke", [](Complex a, Complex z) { return eval_blaschke(a, z); }, py::arg("a"),
          py::arg("z"));

    py::enum_<RootFunction>(m, "RootFunction")
        .value("MapValue", RootFunction::MapValue)
        .value("MapDerivative", RootFunction::MapDerivative);

    py::class_<CriticalInventory>(m, "CriticalInventory")
        .def_readonly("c_plus", &CriticalInventory::c_plus)
        .def_readonly("c_minus", &CriticalInventory::c_minus)
        .def_readonly("z0", &CriticalInventory::z0)
        .def_readonly("pole_z_inf", &CriticalInventory::pole_z_inf)
        .def_property_readonly("small_zeros",
                               [](const CriticalInventory& i) {
                                   return std::vector<Complex>(i.small_zeros.begin(), i.small_zeros.end());
                               })
        .def_property_readonly("small_crits",
                               [](const CriticalInventory& i) {
                                   return std::vector<Complex>(i.small_crits.begin(), i.small_crits.end());
                               })
        .def_readonly("origin_is_pole", &CriticalInventory::origin_is_pole);

    m.def("blaschke_crits", &blaschke_crits, py::arg("a"));
    m.def("small_zero_seeds",
          [](const ParameterPair& p) {
              const auto s = small_zero_seeds(p);
              return std::vector<Complex>(s.begin(), s.end());
          });
    m.def("small_crit_seeds",
          [](const ParameterPair& p) {
              const auto s = small_crit_seeds(p);
              return std::vector<Complex>(s.begin(), s.end());
          });
    m.def("refine_root", &refine_root, py::arg("f"), py::arg("p"), py::arg("seed"));
    m.def("full_inventory", &full_inventory, py::arg("p"), py::arg("working_bound") = kInventoryBound);
    m.def("check_annulus", &check_annulus, py::arg("p"), py::arg("inv"));
    m.def("zero_residual", &zero_residual);
    m.def("crit_residual", &crit_residual);

    py::enum_<RegionTag>(m, "RegionTag")
        .value("FarField", RegionTag::FarField)
        .value("PoleThroat", RegionTag::PoleThroat)
        .value("SmallAnnulus", RegionTag::SmallAnnulus)
        .value("MidZone", RegionTag::MidZone);

    py::class_<OrbitRecord>(m, "OrbitRecord")
        .def_readonly("escaped", &OrbitRecord::escaped)
        .def_property_readonly("escape_index",
                               [](const OrbitRecord& r) -> py::object {
                                   if (!r.escape_index) return py::none();
                                   return py::int_(*r.escape_index);
                               })
        .def_readonly("route", &OrbitRecord::route)
        .def_readonly("final_point", &OrbitRecord::final_point);

    m.def("region_tag", &region_tag, py::arg("p"), py::arg("z"), py::arg("rho") = kDefaultRho);
    m.def("region_tag", [](const ParameterPair& p, Complex z, double rho) { return region_tag(p, z, rho); },
          py::arg("p"), py::arg("z"), py::arg("rho") = kDefaultRho);
    m.def("iterate_orbit", &iterate_orbit, py::arg("p"), py::arg("z0"), py::arg("max_iter"),
          py::arg("rho") = kDefaultRho);
    m.def("iterate_orbit",
          [](const ParameterPair& p, Complex z0, int max_iter, double rho) {
              return iterate_orbit(p, z0, max_iter, rho);
          },
          py::arg("p"), py::arg("z0"), py::arg("max_iter"), py::arg("rho") = kDefaultRho);
    m.def("escape_time_at",
          [](const ParameterPair& p, Complex z0, int max_iter, double rho) -> py::object {
              const auto n = escape_time_at(p, z0, max_iter, rho);
              if (!n) return py::none();
              return py::int_(*n);
          },
          py::arg("p"), py::arg("z0"), py::arg("max_iter"), py::arg("rho") = kDefaultRho);

    py::enum_<FatouCase>(m, "FatouCase")
        .value("CaseA", FatouCase::CaseA)
        .value("CaseB", FatouCase::CaseB)
        .value("CaseC", FatouCase::CaseC)
        .value("NotEscaping", FatouCase::NotEscaping)
        .value("Undetermined", FatouCase::Undetermined);

    py::class_<ClassifierBudget>(m, "ClassifierBudget")
        .def(py::init<>())
        .def_readwrite("max_iter", &ClassifierBudget::max_iter)
        .def_readwrite("surround_n_theta", &ClassifierBudget::surround_n_theta)
        .def_readwrite("surround_n_radii", &ClassifierBudget::surround_n_radii)
        .def_readwrite("escape_index_tolerance", &ClassifierBudget::escape_index_tolerance)
        .def_readwrite("rho", &ClassifierBudget::rho)
        .def_readwrite("inventory_bound", &ClassifierBudget::inventory_bound);

    py::class_<Window>(m, "Window")
        .def(py::init<>())
        .def(py::init([](Complex center, double width, double height) {
                 return Window {center, width, height};
             }),
             py::arg("center"), py::arg("width"), py::arg("height"))
        .def_readwrite("center", &Window::center)
        .def_readwrite("width", &Window::width)
        .def_readwrite("height", &Window::height);

    py::class_<EscapeGrid>(m, "EscapeGrid")
        .def_readonly("window", &EscapeGrid::window)
        .def_readonly("nx", &EscapeGrid::nx)
        .def_readonly("ny", &EscapeGrid::ny)
        .def("escape_index",
             [](const EscapeGrid& g) {
                 py::array_t<std::int32_t> out({g.ny, g.nx});
                 auto* d = out.mutable_data();
                 for (std::size_t i = 0; i < g.cells.size(); ++i) d[i] = g.cells[i].escape_index;
                 return out;
             })
        .def("route_class",
             [](const EscapeGrid& g) {
                 py::array_t<std::uint16_t> out({g.ny, g.nx});
                 auto* d = out.mutable_data();
                 for (std::size_t i = 0; i < g.cells.size(); ++i) d[i] = g.cells[i].route_class;
                 return out;
             })
        .def("pixel_of", [](const EscapeGrid& g, Complex z) -> py::object {
            int ix = 0, iy = 0;
            if (!g.pixel_of(z, ix, iy)) return py::none();
            return py::make_tuple(ix, iy);
        });

    py::class_<ComponentStats>(m, "ComponentStats")
        .def_readonly("pixel_count", &ComponentStats::pixel_count)
        .def_readonly("connectivity", &ComponentStats::connectivity)
        .def_readonly("surrounds_origin", &ComponentStats::surrounds_origin);

    m.def("classify", &classify, py::arg("p"), py::arg("budget") = ClassifierBudget {},
          py::call_guard<py::gil_scoped_release>());
    m.def("surrounds_origin", &surrounds_origin, py::arg("p"), py::arg("witness"),
          py::arg("budget") = ClassifierBudget {}, py::call_guard<py::gil_scoped_release>());
    m.def("escape_grid", &escape_grid, py::arg("p"), py::arg("window"), py::arg("nx"),
          py::arg("ny"), py::arg("max_iter"), py::arg("rho") = kDefaultRho,
          py::arg("n_threads") = 0, py::call_guard<py::gil_scoped_release>());
    m.def("component_stats", &component_stats, py::arg("grid"), py::arg("seed_ix"),
          py::arg("seed_iy"));

    py::enum_<ItineraryTerminal>(m, "ItineraryTerminal")
        .value("Escaped", ItineraryTerminal::Escaped)
        .value("BudgetExhausted", ItineraryTerminal::BudgetExhausted)
        .value("LeftLabeledSet", ItineraryTerminal::LeftLabeledSet);

    py::enum_<ViolationKind>(m, "ViolationKind")
        .value("ConsecutiveZeros", ViolationKind::ConsecutiveZeros)
        .value("ZeroNotFollowedIntoW3", ViolationKind::ZeroNotFollowedIntoW3)
        .value("ImageLinkMismatch", ViolationKind::ImageLinkMismatch)
        .value("UnknownLabel", ViolationKind::UnknownLabel);

    py::class_<ItineraryViolation>(m, "ItineraryViolation")
        .def_readonly("position", &ItineraryViolation::position)
        .def_readonly("kind", &ItineraryViolation::kind);

    py::class_<AnnulusLabel>(m, "AnnulusLabel")
        .def_readonly("id", &AnnulusLabel::id)
        .def_readonly("r_min", &AnnulusLabel::r_min)
        .def_readonly("r_max", &AnnulusLabel::r_max)
        .def_readonly("depth", &AnnulusLabel::depth)
        .def_readonly("image_id", &AnnulusLabel::image_id);

    py::class_<Itinerary>(m, "Itinerary")
        .def_readonly("symbols", &Itinerary::symbols)
        .def_readonly("terminal", &Itinerary::terminal);

    py::class_<PolarResolution>(m, "PolarResolution")
        .def(py::init<>())
        .def_readwrite("n_theta", &PolarResolution::n_theta)
        .def_readwrite("n_r", &PolarResolution::n_r);

    py::class_<LabelTable>(m, "LabelTable")
        .def_property_readonly("labels", &LabelTable::labels)
        .def_property_readonly("w3_outer_edge", &LabelTable::w3_outer_edge)
        .def_property_readonly("n_theta", &LabelTable::n_theta)
        .def("find_band", &LabelTable::find_band)
        .def("sample_point", &LabelTable::sample_point);

    m.def("label_annuli", &label_annuli, py::arg("p"), py::arg("max_depth"),
          py::arg("res") = PolarResolution {}, py::arg("budget") = ClassifierBudget {},
          py::arg("n_threads") = 0, py::call_guard<py::gil_scoped_release>());
    m.def("compute_itinerary", &compute_itinerary, py::arg("p"), py::arg("labels"), py::arg("z"),
          py::arg("max_steps"), py::arg("rho") = kDefaultRho);
    m.def("check_itinerary", &check_itinerary, py::arg("labels"), py::arg("it"));

    m.def("render_dynamical",
          [](const ParameterPair& p, const Window& w, int nx, int ny, int max_iter, double rho,
             int n_threads) {
              ImageBuffer img;
              {
                  py::gil_scoped_release release;
                  img = render_dynamical(p, w, nx, ny, max_iter, {}, rho, n_threads);
              }
              return image_to_numpy(img);
          },
          py::arg("p"), py::arg("window"), py::arg("nx"), py::arg("ny"),
          py::arg("max_iter") = kDynamicalMaxIter, py::arg("rho") = kDefaultRho,
          py::arg("n_threads") = 0);
    m.def("render_parameter",
          [](Complex a, const Window& w, int nx, int ny, int max_iter, double rho, int n_threads) {
              ImageBuffer img;
              {
                  py::gil_scoped_release release;
                  img = render_parameter(a, w, nx, ny, max_iter, {}, rho, n_threads);
              }
              return image_to_numpy(img);
          },
          py::arg("a"), py::arg("window"), py::arg("nx"), py::arg("ny"),
          py::arg("max_iter") = kClassifyMaxIter, py::arg("rho") = kDefaultRho,
          py::arg("n_threads") = 0);
    m.def("write_ppm",
          [](const std::string& path,
             const py::array_t<std::uint8_t, py::array::c_style | py::array::forcecast>& arr) {
              write_ppm(path, numpy_to_image(arr));
          },
          py::arg("path"), py::arg("image"));

    m.def("run_suite", [](const std::string& name, int n_threads) {
        std::ostringstream os;
        bool ok = false;
        {
            py::gil_scoped_release release;
            ok = run_suite(name, os, n_threads);
        }
        return py::make_tuple(ok, os.str());
    }, py::arg("name"), py::arg("n_threads") = 0);

    m.attr("DEFAULT_RHO") = kDefaultRho;
    m.attr("DYNAMICAL_MAX_ITER") = kDynamicalMaxIter;
    m.attr("CLASSIFY_MAX_ITER") = kClassifyMaxIter;
}
