/* Build: cargo build -p vqdist-ffi --release
 *        cc -std=c99 -Icrates/ffi/include crates/ffi/examples/train.c \
 *           target/release/libvqdist_ffi.a -lm -lpthread -ldl -o train */
#include <stdio.h>
#include "vqdist.h"

int main(void) {
    VqCircuit *circuit = NULL;
    VqTrace *trace = NULL;
    double target[16];
    double dist[16];

    if (vq_catalog_get(8, &circuit) != VQ_STATUS_OK) {
        fprintf(stderr, "catalog: %s\n", vq_last_error());
        return 1;
    }
    vq_target_pmf(VQ_TARGET_NORMAL, 0.0, 4, target, 16);

    VqTrainConfig cfg = vq_train_config_default();
    cfg.seed = 1;
    if (vq_train(circuit, target, 16, &cfg, &trace) != VQ_STATUS_OK) {
        fprintf(stderr, "train: %s\n", vq_last_error());
        vq_circuit_free(circuit);
        return 2;
    }
    vq_trace_final_dist(trace, dist, 16);
    printf("vqdist %s final JS %.6e\n", vq_version(), vq_trace_final_cost(trace));
    for (int x = 0; x < 16; x++)
        printf("%2d  %.5f  %.5f\n", x, dist[x], target[x]);

    vq_trace_free(trace);
    vq_circuit_free(circuit);
    return 0;
}
