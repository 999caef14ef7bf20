import { defineConfig } from "vitest/config";

// In dev mode API calls proxy to a locally running `newsmill serve`;
// the production build is served by the same process under /ui.
export default defineConfig({
  base: "./",
  server: {
    proxy: {
      "/clusters": "http://127.0.0.1:8000",
      "/entities": "http://127.0.0.1:8000",
      "/search": "http://127.0.0.1:8000",
      "/pivot": "http://127.0.0.1:8000",
      "/stats": "http://127.0.0.1:8000",
    },
  },
  test: {
    environment: "jsdom",
    include: ["test/**/*.test.ts"],
    globalSetup: ["./test/global-setup.ts"],
    testTimeout: 30000,
    hookTimeout: 120000,
  },
});
