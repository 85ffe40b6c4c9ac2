#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "polarkit/bec_exact.hpp"
#include "polarkit/bounds.hpp"
#include "polarkit/channel.hpp"
#include "polarkit/codec.hpp"
#include "polarkit/construction.hpp"
#include "polarkit/joint_density.hpp"
#include "polarkit/rng.hpp"

namespace py = pybind11;
using namespace polarkit;

PYBIND11_MODULE(_polarkit, m) {
    m.doc() = "polar code construction, density evolution, bounds and SC simulation";

    py::class_<QuantizationSpec>(m, "QuantizationSpec")
        .def(py::init<double, double>(), py::arg("step"), py::arg("half_range"))
        .def_property_readonly("step", &QuantizationSpec::step)
        .def_property_readonly("half_range", &QuantizationSpec::half_range)
        .def_property_readonly("half_bins", &QuantizationSpec::half_bins);
    m.def("default_quant", &default_quant);
    m.def("default_joint_quant", &default_joint_quant);

    py::class_<LlrDensity>(m, "LlrDensity")
        .def_property_readonly("atom_pos_inf", &LlrDensity::atom_pos_inf)
        .def_property_readonly("atom_neg_inf", &LlrDensity::atom_neg_inf)
        .def_property_readonly("bins", &LlrDensity::bins)
        .def("total_mass", &LlrDensity::total_mass)
        .def("dump", [](const LlrDensity& d) {
            std::ostringstream os;
            d.dump(os);
            return os.str();
        });
    m.def("var_conv", &var_conv);
    m.def("chk_conv", &chk_conv);
    m.def("error_prob", &error_prob);
    m.def("bhattacharyya", &bhattacharyya);

    py::class_<ChannelModel>(m, "ChannelModel")
        .def_static("parse", &ChannelModel::parse)
        .def_static("bec", &ChannelModel::bec)
        .def_static("bsc", &ChannelModel::bsc)
        .def_static("biawgn", &ChannelModel::biawgn)
        .def_property_readonly("param", &ChannelModel::param)
        .def("descriptor", &ChannelModel::descriptor);
    m.def("llr_density", &llr_density, py::arg("channel"), py::arg("quant") = default_quant());

    m.def("evolve_erasure", &evolve_erasure, py::arg("eps"), py::arg("n"), py::arg("i"));
    py::class_<JointErasureDist>(m, "JointErasureDist")
        .def_readonly("p00", &JointErasureDist::p00)
        .def_readonly("p01", &JointErasureDist::p01)
        .def_readonly("p10", &JointErasureDist::p10)
        .def_readonly("p11", &JointErasureDist::p11);
    m.def("evolve_joint", &evolve_joint, py::arg("eps"), py::arg("n"), py::arg("i"), py::arg("j"));
    py::class_<JointErasureDistS>(m, "JointErasureDistS")
        .def_property_readonly("order", &JointErasureDistS::order)
        .def_property_readonly("probs", &JointErasureDistS::probs)
        .def("prob", &JointErasureDistS::prob)
        .def("marginalize", &JointErasureDistS::marginalize);
    m.def("evolve_joint_s", &evolve_joint_s, py::arg("eps"), py::arg("n"), py::arg("indices"));
    m.def("brute_force_events", &brute_force_events, py::arg("eps"), py::arg("n"),
          py::arg("indices"));

    py::enum_<MetricKind>(m, "MetricKind")
        .value("ERROR_PROB", MetricKind::ERROR_PROB)
        .value("ERASURE_PROB", MetricKind::ERASURE_PROB)
        .value("BHATTACHARYYA", MetricKind::BHATTACHARYYA);
    py::class_<ReliabilityVector>(m, "ReliabilityVector")
        .def_readonly("n", &ReliabilityVector::n)
        .def_readonly("kind", &ReliabilityVector::kind)
        .def_readonly("values", &ReliabilityVector::values);
    py::class_<DensityEvolutionResult>(m, "DensityEvolutionResult")
        .def_readonly("n", &DensityEvolutionResult::n)
        .def_readonly("error_prob", &DensityEvolutionResult::error_prob)
        .def_readonly("bhattacharyya", &DensityEvolutionResult::bhattacharyya)
        .def_readonly("conv_count", &DensityEvolutionResult::conv_count);
    m.def("density_evolution_tree", &density_evolution_tree, py::arg("base"), py::arg("n"));
    m.def("select_info_set", &select_info_set, py::arg("reliability"), py::arg("K"));
    m.def("precedes", &precedes, py::arg("i"), py::arg("j"), py::arg("n") = 0);
    m.def("minimal_elements", &minimal_elements, py::arg("I"), py::arg("n"));

    py::class_<CodeSpec>(m, "CodeSpec")
        .def(py::init<>())
        .def_readwrite("n", &CodeSpec::n)
        .def_readwrite("channel", &CodeSpec::channel)
        .def_readwrite("metric", &CodeSpec::metric)
        .def_readwrite("info_set", &CodeSpec::info_set)
        .def_readwrite("values", &CodeSpec::values)
        .def("to_json", &CodeSpec::to_json)
        .def_static("from_json", &CodeSpec::from_json)
        .def("save", &CodeSpec::save)
        .def_static("load", &CodeSpec::load);

    py::enum_<EventKind>(m, "EventKind")
        .value("BEC_ERASURE", EventKind::BEC_ERASURE)
        .value("GENERIC_ERROR", EventKind::GENERIC_ERROR);
    py::class_<EventSystem>(m, "EventSystem")
        .def_static("bec_erasure", &EventSystem::bec_erasure)
        .def_static("generic_error", &EventSystem::generic_error, py::arg("channel"),
                    py::arg("n"), py::arg("indices"), py::arg("quant") = default_joint_quant())
        .def("single", &EventSystem::single)
        .def("pair_both", &EventSystem::pair_both)
        .def("pair_neither", &EventSystem::pair_neither);
    py::class_<BoundReport>(m, "BoundReport")
        .def_readonly("kind", &BoundReport::kind)
        .def_readonly("value", &BoundReport::value)
        .def_readonly("subset", &BoundReport::subset)
        .def_readonly("tree", &BoundReport::tree)
        .def("to_json", &BoundReport::to_json);
    m.def("union_bound", &union_bound);
    m.def("block_union_prob", &block_union_prob, py::arg("channel"), py::arg("n"), py::arg("k"),
          py::arg("i"), py::arg("kind"), py::arg("quant") = default_quant());
    m.def("decomposed_union_bound",
          [](const std::vector<std::uint32_t>& I, const ChannelModel& ch, int n, EventKind kind) {
              return decomposed_union_bound(I, event_level_probs(ch, n, kind), n);
          },
          py::arg("I"), py::arg("channel"), py::arg("n"),
          py::arg("kind") = EventKind::BEC_ERASURE);
    m.def("pairwise_lower_bound", &pairwise_lower_bound);
    m.def("tree_upper_bound", &tree_upper_bound, py::arg("es"), py::arg("I"),
          py::arg("allow_generic") = false);

    m.def("polar_encode", &polar_encode);
    m.def("sc_decode",
          [](const std::vector<double>& llr, const CodeSpec& code, std::uint64_t seed) {
              ScDecoder dec(code.n, code.info_set);
              RngStream rng(seed);
              const DecodeResult r = dec.decode(llr, rng);
              return py::make_tuple(r.u_hat, r.erasure, r.combine_ops);
          },
          py::arg("llr"), py::arg("code"), py::arg("seed") = 1);

    py::enum_<FailureKind>(m, "FailureKind")
        .value("ERROR", FailureKind::ERROR)
        .value("ERASURE", FailureKind::ERASURE);
    py::class_<SimResult>(m, "SimResult")
        .def_readonly("trials", &SimResult::trials)
        .def_readonly("failures", &SimResult::failures)
        .def_readonly("estimate", &SimResult::estimate)
        .def_readonly("ci95", &SimResult::ci95)
        .def("to_json", &SimResult::to_json);
    m.def("simulate_block", &simulate_block, py::arg("code"), py::arg("channel"),
          py::arg("trials"), py::arg("seed"), py::arg("kind"), py::arg("threads") = 0);
}
