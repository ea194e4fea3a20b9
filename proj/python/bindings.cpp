#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "succinct_rank/approx_sliding.hpp"
#include "succinct_rank/approx_static.hpp"
#include "succinct_rank/bounds.hpp"
#include "succinct_rank/errors.hpp"
#include "succinct_rank/exact_sliding.hpp"
#include "succinct_rank/exact_static.hpp"

namespace py = pybind11;
using namespace srank;

namespace {

using Values = std::vector<std::uint64_t>;

// Estimates are exact dyadic rationals; hand them over as Fractions.
py::object to_fraction(const Estimate& e) {
    static py::object fraction = py::module_::import("fractions").attr("Fraction");
    const Estimate n = e.normalized();
    py::object num = py::reinterpret_steal<py::object>(
        PyLong_FromString(to_string_i128(n.numerator()).c_str(), nullptr, 10));
    py::object den = py::int_(1).attr("__lshift__")(n.frac_bits());
    return fraction(num, den);
}

Strategy parse_strategy(const std::string& s) {
    if (s == "lookup") return Strategy::LookupTable;
    if (s == "cumulative") return Strategy::Cumulative;
    throw ValidationError("unknown strategy '" + s + "' (use lookup or cumulative)");
}

BuildOptions options(const std::optional<std::string>& strategy, std::optional<std::uint64_t> chunk_len,
                     std::optional<std::uint64_t> sub_len) {
    BuildOptions o;
    if (strategy) o.strategy = parse_strategy(*strategy);
    o.chunk_len = chunk_len;
    o.sub_len = sub_len;
    return o;
}

template <class T>
py::bytes to_bytes(const T& r) {
    std::ostringstream out;
    r.save(out);
    return py::bytes(out.str());
}

template <class T>
T from_bytes(const py::bytes& b) {
    std::istringstream in(std::string(b), std::ios::binary);
    return T::load(in);
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Succinct exact and approximate rank structures over bounded integers";

    py::register_exception<FormatError>(m, "FormatError", PyExc_ValueError);

    m.def("lower_bound_bits",
          [](std::uint64_t ell, std::uint64_t n, std::uint64_t delta) {
              return lower_bound_bits(Params{ell, n, delta});
          },
          py::arg("ell"), py::arg("n"), py::arg("delta"));
    m.def("exact_bound_bits", &exact_bound_bits, py::arg("ell"), py::arg("n"));

    py::class_<ExactStaticRanker>(m, "ExactStaticRanker")
        .def(py::init([](const Values& x, std::uint64_t ell, std::optional<std::string> strategy,
                         std::optional<std::uint64_t> chunk_len, std::optional<std::uint64_t> sub_len) {
                 return ExactStaticRanker::build(x, ell, options(strategy, chunk_len, sub_len));
             }),
             py::arg("values"), py::arg("ell"), py::arg("strategy") = py::none(),
             py::arg("chunk_len") = py::none(), py::arg("sub_len") = py::none())
        .def("query", &ExactStaticRanker::query, py::arg("i"))
        .def("element", &ExactStaticRanker::element, py::arg("d"))
        .def("__len__", &ExactStaticRanker::size)
        .def_property_readonly("ell", &ExactStaticRanker::ell)
        .def_property_readonly("strategy", [](const ExactStaticRanker& r) { return std::string(to_string(r.strategy())); })
        .def_property_readonly("payload_bits", &ExactStaticRanker::payload_bits)
        .def("bits_ratio", &ExactStaticRanker::bits_ratio)
        .def("to_bytes", &to_bytes<ExactStaticRanker>)
        .def_static("from_bytes", &from_bytes<ExactStaticRanker>, py::arg("data"));

    py::class_<ApproxStaticRanker>(m, "ApproxStaticRanker")
        .def(py::init([](const Values& x, std::uint64_t ell, std::uint64_t delta) {
                 return ApproxStaticRanker::build(x, ell, delta);
             }),
             py::arg("values"), py::arg("ell"), py::arg("delta"))
        .def("query", [](const ApproxStaticRanker& r, std::uint64_t i) { return to_fraction(r.query(i)); },
             py::arg("i"))
        .def("__len__", [](const ApproxStaticRanker& r) { return r.params().n; })
        .def_property_readonly("ell", [](const ApproxStaticRanker& r) { return r.params().ell; })
        .def_property_readonly("delta", [](const ApproxStaticRanker& r) { return r.params().delta; })
        .def_property_readonly("blocks", &ApproxStaticRanker::blocks)
        .def("block_value", &ApproxStaticRanker::block_value, py::arg("k"))
        .def_property_readonly("remainder", &ApproxStaticRanker::remainder)
        .def_property_readonly("payload_bits", &ApproxStaticRanker::payload_bits)
        .def("bits_ratio", &ApproxStaticRanker::bits_ratio)
        .def("to_bytes", &to_bytes<ApproxStaticRanker>)
        .def_static("from_bytes", &from_bytes<ApproxStaticRanker>, py::arg("data"));

    py::class_<ExactSlidingRanker>(m, "ExactSlidingRanker")
        .def(py::init([](std::uint64_t ell, std::uint64_t n, std::optional<std::string> strategy) {
                 return ExactSlidingRanker(ell, n, options(strategy, std::nullopt, std::nullopt));
             }),
             py::arg("ell"), py::arg("n"), py::arg("strategy") = py::none())
        .def("add", &ExactSlidingRanker::add, py::arg("x"))
        .def("extend",
             [](ExactSlidingRanker& r, const Values& xs) {
                 for (auto x : xs) r.add(x);
             },
             py::arg("values"))
        .def("query", [](const ExactSlidingRanker& r, std::uint64_t i) { return r.query(i); }, py::arg("i"))
        .def("element", &ExactSlidingRanker::element, py::arg("age"))
        .def_property_readonly("ell", &ExactSlidingRanker::ell)
        .def_property_readonly("window", &ExactSlidingRanker::window)
        .def_property_readonly("count", &ExactSlidingRanker::count)
        .def_property_readonly("payload_bits", &ExactSlidingRanker::payload_bits)
        .def("bits_ratio", &ExactSlidingRanker::bits_ratio)
        .def("to_bytes", &to_bytes<ExactSlidingRanker>)
        .def_static("from_bytes", &from_bytes<ExactSlidingRanker>, py::arg("data"));

    py::class_<ApproxSlidingRanker>(m, "ApproxSlidingRanker")
        .def(py::init([](std::uint64_t ell, std::uint64_t n, std::uint64_t delta, bool permissive) {
                 SlidingOptions o;
                 o.permissive = permissive;
                 return ApproxSlidingRanker(Params{ell, n, delta}, o);
             }),
             py::arg("ell"), py::arg("n"), py::arg("delta"), py::arg("permissive") = false)
        .def("add", &ApproxSlidingRanker::add, py::arg("x"))
        .def("extend",
             [](ApproxSlidingRanker& r, const Values& xs) {
                 for (auto x : xs) r.add(x);
             },
             py::arg("values"))
        .def("query", [](const ApproxSlidingRanker& r, std::uint64_t i) { return to_fraction(r.query(i)); },
             py::arg("i"))
        .def("interval",
             [](const ApproxSlidingRanker& r, std::uint64_t t1, std::uint64_t t2) {
                 return to_fraction(r.interval(t1, t2));
             },
             py::arg("t1"), py::arg("t2"))
        .def_property_readonly("ell", [](const ApproxSlidingRanker& r) { return r.params().ell; })
        .def_property_readonly("window", [](const ApproxSlidingRanker& r) { return r.params().n; })
        .def_property_readonly("delta", [](const ApproxSlidingRanker& r) { return r.params().delta; })
        .def_property_readonly("count", &ApproxSlidingRanker::count)
        .def_property_readonly("is_exact", &ApproxSlidingRanker::is_exact)
        .def_property_readonly("payload_bits", &ApproxSlidingRanker::payload_bits)
        .def("bits_ratio", &ApproxSlidingRanker::bits_ratio)
        .def("to_bytes", &to_bytes<ApproxSlidingRanker>)
        .def_static("from_bytes", &from_bytes<ApproxSlidingRanker>, py::arg("data"));
}
