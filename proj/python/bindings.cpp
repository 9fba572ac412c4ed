// Python bindings. Requests and reports cross the boundary as JSON text; the
// package's __init__ converts them to and from Python objects.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "rearr/api.hpp"
#include "rearr/game.hpp"
#include "rearr/haar.hpp"
#include "rearr/json_io.hpp"

namespace py = pybind11;
using rearr::Json;

namespace {

using Endpoint = Json (*)(const Json&);

std::string call(Endpoint fn, const std::string& request) { return fn(rearr::parse_json_text(request, "request")).dump(); }

class PyGame {
 public:
  explicit PyGame(const std::string& initial, std::uint64_t cap)
      : game_(rearr::Game::create(rearr::coloured_from_json(rearr::parse_json_text(initial, "initial")),
                                  rearr::EngineConfig{cap, std::chrono::milliseconds(10000)})) {}

  std::string play(const std::string& added) {
    const rearr::MoveRecord& r = game_.play(rearr::collection_from_json(rearr::parse_json_text(added, "add")));
    return rearr::to_json(r).dump();
  }
  std::string state() const { return rearr::to_json(game_).dump(); }
  std::string status() const { return rearr::to_string(game_.status()); }

 private:
  rearr::Game game_;
};

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Dyadic rearrangements, Haar numerics and the colouring game";

  py::register_exception<rearr::DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<rearr::InputError>(m, "InputError", PyExc_ValueError);
  py::register_exception<rearr::MoveRejected>(m, "MoveRejected", PyExc_ValueError);

  const std::pair<const char*, Endpoint> endpoints[] = {
      {"shift_report", rearr::api::shift_report},
      {"shift_nj", rearr::api::shift_nj},
      {"shift_semenov", rearr::api::shift_semenov},
      {"shift_decompose", rearr::api::shift_decompose},
      {"shift_select_levels", rearr::api::shift_select_levels},
      {"tree_report", rearr::api::tree_report},
      {"norm_report", rearr::api::norm_report},
      {"figiel_trend", rearr::api::figiel_trend},
      {"blocked_report", rearr::api::blocked_report},
      {"restricted_report", rearr::api::restricted_report},
      {"game_check", rearr::api::game_check},
      {"game_previsible", rearr::api::game_previsible},
      {"game_extend", rearr::api::game_extend},
      {"game_oracle", rearr::api::game_oracle},
      {"game_adversary", rearr::api::game_adversary},
  };
  for (const auto& [name, fn] : endpoints) {
    m.def(name, [fn](const std::string& request) { return call(fn, request); }, py::arg("request"));
  }

  m.def(
      "haar_analyze",
      [](const std::vector<double>& values) {
        int depth = 0;
        while ((std::size_t{1} << depth) < values.size()) ++depth;
        const rearr::HaarCoefficients c = rearr::haar_analyze(rearr::GridFunction(depth, values));
        return py::make_tuple(c.mean, c.coeff);
      },
      py::arg("values"), "Mean and per-level coefficients of a step function on 2^J cells.");
  m.def(
      "haar_synthesize",
      [](double mean, const std::vector<std::vector<double>>& coeff) {
        rearr::HaarCoefficients c = rearr::HaarCoefficients::zeros(static_cast<int>(coeff.size()));
        c.mean = mean;
        for (std::size_t l = 0; l < coeff.size(); ++l) {
          if (coeff[l].size() != c.coeff[l].size()) throw rearr::DomainError("level " + std::to_string(l) + " has the wrong length");
          c.coeff[l] = coeff[l];
        }
        return rearr::haar_synthesize(c).values;
      },
      py::arg("mean"), py::arg("coeff"));
  m.def(
      "lp_norm",
      [](const std::vector<double>& values, double p) {
        int depth = 0;
        while ((std::size_t{1} << depth) < values.size()) ++depth;
        return rearr::lp_norm(rearr::GridFunction(depth, values), p);
      },
      py::arg("values"), py::arg("p"));

  py::class_<PyGame>(m, "Game")
      .def(py::init<const std::string&, std::uint64_t>(), py::arg("initial"), py::arg("cap") = std::uint64_t{1} << 20)
      .def("play", &PyGame::play, py::arg("added"))
      .def("state", &PyGame::state)
      .def_property_readonly("status", &PyGame::status);
}
