import { EngineClient } from "./client.js";
import { ControlPanel } from "./panel.js";

const params = new URLSearchParams(window.location.search);
const host = params.get("host") ?? window.location.hostname ?? "127.0.0.1";
const port = params.get("port") ?? "8080";

const client = new EngineClient(`ws://${host}:${port}`, (url) => new WebSocket(url) as never);
const root = document.getElementById("panel");
if (root === null) throw new Error("missing #panel element");
new ControlPanel(root, client);
client.connect();
