#ifndef CONV_ENERGY_H
#define CONV_ENERGY_H

#include <stddef.h>
#include <stdint.h>

// Result of every fallible call.
typedef enum CeStatus {
  CE_STATUS_OK = 0,
  // A required pointer argument was null.
  CE_STATUS_NULL_POINTER = 1,
  // Malformed input: bad text, unknown names, wrong lengths.
  CE_STATUS_INVALID_INPUT = 2,
  // Well-formed input that cannot be evaluated: overflow, singular fit,
  // window outside the trace.
  CE_STATUS_COMPUTE = 3,
  // The library panicked; this is a bug.
  CE_STATUS_PANIC = 4,
} CeStatus;

// A two-regressor energy model, `energy_mj = x1 * bus + x2 * simd`.
typedef struct CeEnergyModel CeEnergyModel;

// A parsed network description.
typedef struct CeNetwork CeNetwork;

// A parsed power trace.
typedef struct CeTrace CeTrace;

// Output of [`ce_chain_predict`].
typedef struct CeChainPrediction {
  double simd;
  double bus;
  double energy_mj;
} CeChainPrediction;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failure on this thread, or an empty string after a
// success. The pointer stays valid until the next call on this thread.
const char *ce_last_error_message(void);

// Parses a JSON network description.
//
// # Safety
// `json` must be a NUL-terminated string and `out` a valid pointer.
enum CeStatus ce_network_parse(const char *json, struct CeNetwork **out);

// Number of layers in the network.
//
// # Safety
// `net` must come from [`ce_network_parse`]; `out` must be valid.
enum CeStatus ce_network_layer_count(const struct CeNetwork *net, size_t *out);

// Sum of MACs over the conv and depthwise-separable layers, batch included.
//
// # Safety
// `net` must come from [`ce_network_parse`]; `out` must be valid.
enum CeStatus ce_network_total_conv_mac(const struct CeNetwork *net, uint64_t *out);

// Sum of storage bytes over all layers, batch included.
//
// # Safety
// `net` must come from [`ce_network_parse`]; `out` must be valid.
enum CeStatus ce_network_total_storage_bytes(const struct CeNetwork *net, uint64_t *out);

// Releases a network. Null is ignored.
//
// # Safety
// `net` must come from [`ce_network_parse`] and not be used afterwards.
void ce_network_free(struct CeNetwork *net);

// Parses a trace CSV: `t_s` followed by channel columns in mW.
//
// # Safety
// `csv` must be a NUL-terminated string and `out` a valid pointer.
enum CeStatus ce_trace_parse_csv(const char *csv, struct CeTrace **out);

// Energy in mJ on `channel` over `[t0, t1]`. A null `channel` selects the
// trace's default rail.
//
// # Safety
// `trace` must come from [`ce_trace_parse_csv`]; `channel` is null or a
// NUL-terminated string; `out_mj` must be valid.
enum CeStatus ce_trace_integrate(const struct CeTrace *trace,
                                 const char *channel,
                                 double t0,
                                 double t1,
                                 double *out_mj);

// First and last timestamps of the trace, in seconds.
//
// # Safety
// `trace` must come from [`ce_trace_parse_csv`]; both outputs must be valid.
enum CeStatus ce_trace_span(const struct CeTrace *trace, double *start, double *end);

// Releases a trace. Null is ignored.
//
// # Safety
// `trace` must come from [`ce_trace_parse_csv`] and not be used afterwards.
void ce_trace_free(struct CeTrace *trace);

// Least-squares slope of `y = c * x` through the origin.
//
// # Safety
// `x` and `y` must each hold `n` values; `out_slope` must be valid.
enum CeStatus ce_fit_origin_1d(const double *x, const double *y, size_t n, double *out_slope);

// Fits `energy = x1 * bus + x2 * simd` through the origin.
//
// # Safety
// `bus`, `simd` and `energy` must each hold `n` values; `out` must be valid.
enum CeStatus ce_fit_origin_2d(const double *bus,
                               const double *simd,
                               const double *energy,
                               size_t n,
                               struct CeEnergyModel **out);

// Builds an energy model from known coefficients.
//
// # Safety
// `out` must be valid.
enum CeStatus ce_energy_model_new(double x1, double x2, struct CeEnergyModel **out);

// Reads the bus (`x1`) and SIMD (`x2`) coefficients.
//
// # Safety
// `model` must be a live handle; both outputs must be valid.
enum CeStatus ce_energy_model_coefficients(const struct CeEnergyModel *model,
                                           double *x1,
                                           double *x2);

// Energy in mJ for the given counters.
//
// # Safety
// `model` must be a live handle; `out_mj` must be valid.
enum CeStatus ce_energy_model_predict(const struct CeEnergyModel *model,
                                      double bus,
                                      double simd,
                                      double *out_mj);

// Releases an energy model. Null is ignored.
//
// # Safety
// `model` must come from this library and not be used afterwards.
void ce_energy_model_free(struct CeEnergyModel *model);

// Chains MAC -> SIMD (slope `c1`) -> bus (slope `c2`) -> energy.
//
// # Safety
// `model` must be a live handle; `out` must be valid.
enum CeStatus ce_chain_predict(uint64_t mac,
                               double c1,
                               double c2,
                               const struct CeEnergyModel *model,
                               struct CeChainPrediction *out);

// Pearson correlation of two series of length `n`.
//
// # Safety
// `x` and `y` must each hold `n` values; `out_r` must be valid.
enum CeStatus ce_pearson(const double *x, const double *y, size_t n, double *out_r);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CONV_ENERGY_H */
