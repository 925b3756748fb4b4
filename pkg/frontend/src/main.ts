import { ApiClient } from "./api.js";
import { App } from "./app.js";

declare global {
  interface Window {
    REPORTMINER_API?: string;
  }
}

const baseUrl = window.REPORTMINER_API ?? "http://127.0.0.1:8571";
const root = document.getElementById("app");
if (root === null) {
  throw new Error("missing #app container");
}
new App(new ApiClient(baseUrl), root).start();
