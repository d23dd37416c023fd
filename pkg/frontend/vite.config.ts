import { defineConfig } from "vitest/config";

export default defineConfig({
  server: {
    proxy: {
      // during development the workbench service runs separately:
      //   fuzzchip serve --dict sampledata/boiler.fzd
      "/api": "http://127.0.0.1:8040",
    },
  },
  test: {
    environment: "node",
    include: ["tests/**/*.test.ts"],
    testTimeout: 30000,
  },
});
